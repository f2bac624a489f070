import pytest

from combword.structfile import (
    StructureFileError,
    dump_structure,
    load_structure,
    loads_structure,
    shipped_structures_dir,
)
from combword.words import EMPTY

SHIPPED = sorted(p.name for p in shipped_structures_dir().glob("*.struct"))


def test_shipped_set():
    assert SHIPPED == ["f1.struct", "f1xf1.struct", "f2.struct", "f2_broken.struct", "f2xf2.struct"]


def test_load_f2():
    st = load_structure("f2.struct")
    c = st.combing
    assert c.uniqueness and c.name == "F2"
    assert c.alphabet.names == ("a", "A", "b", "B")
    assert c.identity_words == {EMPTY}


def test_load_f2xf2_with_diagonal():
    st = load_structure("f2xf2.struct")
    assert len(st.combing.alphabet) == 8
    emb = st.embeddings["diagonal"]
    assert emb.generator_words[0] == st.combing.alphabet.parse("a1 a2")
    assert emb.generator_words[1] == st.combing.alphabet.parse("A2 A1")


def same_automaton(m1, m2):
    return (m1.num_states, m1.initial, m1.accepting, dict(m1.transitions)) == (
        m2.num_states, m2.initial, m2.accepting, dict(m2.transitions))


@pytest.mark.parametrize("name", SHIPPED)
def test_round_trip(name):
    st = load_structure(name)
    back = loads_structure(dump_structure(st))
    c, d = st.combing, back.combing
    assert c.alphabet == d.alphabet
    assert same_automaton(c.acceptor, d.acceptor)
    for x in c.multipliers:
        assert same_automaton(c.multipliers[x], d.multipliers[x])
        assert c.multipliers[x].max_lag == d.multipliers[x].max_lag
    assert (c.lam, c.epsilon, c.departure, c.fellow_traveler_k, c.uniqueness, c.identity_words) == (
        d.lam, d.epsilon, d.departure, d.fellow_traveler_k, d.uniqueness, d.identity_words)
    assert back.oracle.describe() == st.oracle.describe()
    assert {k: e.generator_words for k, e in st.embeddings.items()} == {
        k: e.generator_words for k, e in back.embeddings.items()}
    assert back.relators == st.relators


BASE = """\
name: bad
alphabet:
  generators: [a, b]
  inverses: [A]
builder:
  kind: free
"""


def test_unpaired_generator_is_a_parse_error():
    with pytest.raises(StructureFileError) as info:
        loads_structure(BASE, source="bad.struct")
    msg = str(info.value)
    assert "bad.struct:4" in msg and "alphabet.inverses" in msg


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("name: [unclosed\n", "<string>:2"),
        ("- just a list\n", "must be a mapping"),
        (BASE.replace("  inverses: [A]\n", "").replace("free", "magic"), "unknown builder kind"),
        (BASE.replace("  inverses: [A]\n", "") + "  rank: 3\n", "rank 3"),
        (BASE.replace("  inverses: [A]\n", "") + "constants:\n  departure: [3, 1]\n", "nondecreasing"),
        (BASE.replace("  inverses: [A]\n", "") + "constants:\n  lambda: abc\n", "rational"),
    ],
)
def test_diagnostics(text, fragment):
    with pytest.raises(StructureFileError) as info:
        loads_structure(text)
    assert fragment in str(info.value)


def test_explicit_nondeterminism_rejected():
    st = load_structure("f2.struct")
    text = dump_structure(st).replace("- [0, b, 3]", "- [0, b, 3]\n    - [0, b, 4]", 1)
    with pytest.raises(StructureFileError) as info:
        loads_structure(text)
    assert "nondeterministic" in str(info.value)


def test_subgroup_inverse_images_checked():
    text = load_structure("f2xf2.struct")
    doc = dump_structure(text).replace("x: a1 a2", "x: a1 a2 A2 A1 a1")
    # still a valid (non-reduced) image; inverses are derived, so it loads
    assert loads_structure(doc).embeddings["diagonal"].blowup == 5


def test_missing_structure():
    with pytest.raises(FileNotFoundError):
        load_structure("nope.struct")
