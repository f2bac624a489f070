import itertools

import pytest

from combword.combing import free_reduced_acceptor
from combword.fsa import (
    PAD,
    AutomatonError,
    Fsa,
    TwoTapeAutomaton,
    accepts,
    accepts_pair,
    enumerate_accepted,
    padded_pairs,
)
from combword.words import EMPTY, shortlex_compare, shortlex_words

A, AI, B, BI = range(4)


@pytest.fixture(scope="module")
def reduced():
    return free_reduced_acceptor(2)


def naive_reduced(w):
    if len(w) < 2:
        return True
    return w[0] != w[1] ^ 1 and naive_reduced(w[1:])


def test_accepts_examples(reduced):
    assert accepts(reduced, (A, B))
    assert not accepts(reduced, (A, AI))
    assert accepts(reduced, EMPTY)


def test_accepts_matches_definition(reduced):
    for w in shortlex_words(4, 6):
        assert accepts(reduced, w) == naive_reduced(w)


def test_enumerate_accepted_examples(reduced):
    assert enumerate_accepted(reduced, 0) == [EMPTY]
    assert enumerate_accepted(reduced, 1) == [EMPTY, (A,), (AI,), (B,), (BI,)]
    # brute-force count of reduced words of length <= 2
    brute = sum(1 for w in shortlex_words(4, 2) if naive_reduced(w))
    assert brute == 17
    assert len(enumerate_accepted(reduced, 2)) == 17


def test_enumerate_accepted_is_ordered_and_complete(reduced):
    got = enumerate_accepted(reduced, 4)
    assert all(shortlex_compare(u, v) == -1 for u, v in zip(got, got[1:]))
    assert got == [w for w in shortlex_words(4, 4) if naive_reduced(w)]


def test_accepts_pair_examples(f2, o2):
    m = f2.multipliers[A]
    # expected values from the oracle: u * a == v ?
    for u, v, expected in [(EMPTY, (A,), True), ((AI,), EMPTY, True), ((B,), (A,), False)]:
        assert (o2.multiply(o2.evaluate(u), o2.letter_value(A)) == o2.evaluate(v)) == expected
        assert accepts_pair(m, u, v) == expected


def test_padded_pairs_right_pads_the_shorter_word():
    assert padded_pairs((A, B), (A,)) == [(A, A), (B, PAD)]
    assert padded_pairs(EMPTY, (B, B)) == [(PAD, B), (PAD, B)]
    assert padded_pairs(EMPTY, EMPTY) == []


def test_accepts_pair_rejects_beyond_max_lag():
    # accepts everything letter by letter, but lag bound 1
    quads = [(0, l, r, 0) for l, r in itertools.product([PAD, 0], repeat=2) if (l, r) != (PAD, PAD)]
    with pytest.raises(AutomatonError):
        TwoTapeAutomaton.from_quads(1, 1, 0, [0], quads, 1)  # pad then letter on same tape
    m = TwoTapeAutomaton.from_quads(
        1, 3, 0, [0, 1, 2],
        [(0, 0, 0, 0), (0, 0, PAD, 1), (1, 0, PAD, 1), (0, PAD, 0, 2), (2, PAD, 0, 2)],
        1,
    )
    assert m.accepts_pair((0, 0), (0,))
    assert not m.accepts_pair((0, 0, 0), (0,))


def test_fsa_construction_checks():
    with pytest.raises(AutomatonError):
        Fsa.from_triples(2, 2, 0, [0], [(0, 0, 1), (0, 0, 0)])
    with pytest.raises(AutomatonError):
        Fsa.from_triples(2, 2, 0, [0], [(0, 0, 5)])
    with pytest.raises(AutomatonError):
        Fsa.from_triples(2, 2, 3, [0], [])
    with pytest.raises(AutomatonError):
        TwoTapeAutomaton.from_quads(1, 1, 0, [0], [(0, PAD, PAD, 0)], 0)
    with pytest.raises(AutomatonError):
        TwoTapeAutomaton.from_quads(1, 2, 0, [0], [(0, 0, 0, 1), (0, 0, 0, 0)], 0)


def test_accepted_pairs_agrees_with_accepts_pair(f2):
    m = f2.multipliers[B]
    pairs = m.accepted_pairs(3)
    words = list(shortlex_words(4, 3))
    brute = {(u, v) for u in words for v in words if m.accepts_pair(u, v)}
    assert pairs == brute
