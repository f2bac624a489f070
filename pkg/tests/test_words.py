import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from combword.words import (
    EMPTY,
    Alphabet,
    WordSyntaxError,
    invert_word,
    shortlex_compare,
    shortlex_successor,
    shortlex_words,
)

F2 = Alphabet.from_generators(["a", "b"], juxtapose=True)
A, AI, B, BI = range(4)

words4 = st.lists(st.integers(0, 3), max_size=8).map(tuple)


def test_default_order_is_generator_then_inverse():
    assert F2.names == ("a", "A", "b", "B")
    assert F2.inverse == (1, 0, 3, 2)


def test_invert_word_examples():
    assert invert_word(EMPTY, F2) == EMPTY
    assert invert_word((A,), F2) == (AI,)
    assert invert_word((A, B), F2) == (BI, AI)


@given(words4)
def test_invert_word_is_an_involution(w):
    assert invert_word(invert_word(w, F2), F2) == w


def test_shortlex_compare_examples():
    assert shortlex_compare(EMPTY, (A,)) == -1
    assert shortlex_compare((A,), (A,)) == 0
    assert shortlex_compare((A, B), (AI, A)) == -1


@given(words4, words4, words4)
def test_shortlex_is_a_total_order(u, v, w):
    assert shortlex_compare(u, v) == -shortlex_compare(v, u)
    assert (shortlex_compare(u, v) == 0) == (u == v)
    if shortlex_compare(u, v) <= 0 and shortlex_compare(v, w) <= 0:
        assert shortlex_compare(u, w) <= 0


def test_shortlex_successor_examples():
    assert shortlex_successor(EMPTY, 4) == (A,)
    assert shortlex_successor((BI,), 4) == (A, A)
    assert shortlex_successor((A, BI), 4) == (AI, A)


@pytest.mark.parametrize("size", range(1, 7))
def test_enumeration_is_complete_and_increasing(size):
    n = sum(size**k for k in range(4))
    seq = [EMPTY]
    for _ in range(n - 1):
        seq.append(shortlex_successor(seq[-1], size))
    expected = {w for k in range(4) for w in itertools.product(range(size), repeat=k)}
    assert set(seq) == expected and len(seq) == n
    assert all(shortlex_compare(u, v) == -1 for u, v in zip(seq, seq[1:]))
    assert list(shortlex_words(size, 3)) == seq


def test_parse_and_format():
    assert F2.parse("abAB") == (A, B, AI, BI)
    assert F2.parse("a b^-1") == (A, BI)
    assert F2.parse("aa⁻¹") == (A, AI)
    assert F2.parse("1") == EMPTY == F2.parse("  ")
    assert F2.format(EMPTY) == "1"
    spaced = Alphabet.from_generators(["a1", "b1"])
    assert spaced.parse("a1 B1 a1^-1") == (0, 3, 1)
    assert spaced.format((0, 3)) == "a1 B1"


def test_parse_rejects_unknown_letters():
    with pytest.raises(WordSyntaxError):
        F2.parse("abz")


@given(words4)
def test_word_syntax_round_trips(w):
    spaced = Alphabet.from_generators(["x1", "x2"])
    assert F2.parse(F2.format(w)) == w
    assert spaced.parse(spaced.format(w)) == w


@pytest.mark.parametrize(
    "names, inverse",
    [(("a", "a"), (1, 0)), (("a", "A"), (0, 0)), (("a", "A"), (1, 2))],
)
def test_alphabet_rejects_bad_tables(names, inverse):
    with pytest.raises(ValueError):
        Alphabet(names, inverse)


def test_juxtaposition_needs_single_characters():
    with pytest.raises(ValueError):
        Alphabet.from_generators(["ab"], juxtapose=True)
