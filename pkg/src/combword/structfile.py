"""Structure files: YAML documents describing a combing.

See README.md for the grammar. ``dump_structure`` always writes the
explicit form, so any loaded structure can be saved and reloaded with its
automata numbered state for state.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any

import yaml

from .combing import (
    DEFAULT_DEPARTURE_BOUND,
    DifferenceExplosion,
    build_direct_product,
    build_free_group_structure,
    identity_set,
)
from .fsa import PAD, AutomatonError, Fsa, TwoTapeAutomaton
from .oracle import FreeOracle, GroupOracle, ProductOracle, oracle_from_description
from .structure import Combing, StructureInvariantError
from .words import Alphabet, Word, WordSyntaxError
from .wordproblem import SubgroupEmbedding

PAD_TOKEN = "$"


class StructureFileError(ValueError):
    """Malformed or inconsistent structure file."""

    def __init__(self, message: str, source: str = "", field_path: str = "", line: int | None = None):
        where = source
        if line is not None:
            where += f":{line}"
        if field_path:
            where += f" [{field_path}]"
        super().__init__(f"{where}: {message}" if where else message)
        self.field_path = field_path
        self.line = line


@dataclass
class Structure:
    name: str
    combing: Combing
    oracle: GroupOracle | None = None
    embeddings: dict[str, SubgroupEmbedding] = field(default_factory=dict)
    relators: dict[str, list[Word]] = field(default_factory=dict)


def shipped_structures_dir() -> Path:
    return Path(str(resources.files("combword") / "structures"))


def resolve_structure_path(path: str | Path, base: Path | None = None) -> Path:
    """A literal path, else relative to ``base``, else a shipped structure."""
    p = Path(path)
    candidates = [p]
    if base is not None and not p.is_absolute():
        candidates.append(base / p)
    candidates.append(shipped_structures_dir() / p.name)
    for c in candidates:
        if c.is_file():
            return c
    raise FileNotFoundError(f"structure file {str(path)!r} not found")


def _line_map(text: str) -> dict[tuple, int]:
    """1-based line of every mapping key / sequence item, by field path."""
    lines: dict[tuple, int] = {}

    def walk(node, path: tuple) -> None:
        lines[path] = node.start_mark.line + 1
        if isinstance(node, yaml.MappingNode):
            for k, v in node.value:
                walk(v, path + (k.value,))
                lines[path + (k.value,)] = k.start_mark.line + 1
        elif isinstance(node, yaml.SequenceNode):
            for i, v in enumerate(node.value):
                walk(v, path + (i,))

    root = yaml.compose(text)
    if root is not None:
        walk(root, ())
    return lines


class _Reader:
    """Field access with path-aware diagnostics."""

    def __init__(self, source: str, lines: dict[tuple, int]):
        self.source = source
        self.lines = lines

    def fail(self, path: tuple, message: str) -> StructureFileError:
        line = None
        for k in range(len(path), -1, -1):
            if path[:k] in self.lines:
                line = self.lines[path[:k]]
                break
        return StructureFileError(message, self.source, ".".join(map(str, path)), line)

    def get(self, doc: dict, path: tuple, key: str, kind=None, default: Any = ...):
        if not isinstance(doc, dict):
            raise self.fail(path, "expected a mapping")
        if key not in doc:
            if default is ...:
                raise self.fail(path + (key,), "missing required field")
            return default
        value = doc[key]
        if kind is not None and not isinstance(value, kind):
            names = kind.__name__ if isinstance(kind, type) else "/".join(k.__name__ for k in kind)
            raise self.fail(path + (key,), f"expected {names}, got {type(value).__name__}")
        return value


def load_structure(path: str | Path) -> Structure:
    p = resolve_structure_path(path)
    return loads_structure(p.read_text(), source=str(p), base=p.parent)


def loads_structure(text: str, source: str = "<string>", base: Path | None = None) -> Structure:
    try:
        doc = yaml.safe_load(text)
        lines = _line_map(text)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark
        raise StructureFileError(str(exc.problem), source, line=mark.line + 1 if mark else None) from exc
    except yaml.YAMLError as exc:
        raise StructureFileError(str(exc), source) from exc
    rd = _Reader(source, lines)
    if not isinstance(doc, dict):
        raise rd.fail((), "structure file must be a mapping")
    try:
        return _load(doc, rd, base)
    except StructureFileError:
        raise
    except (StructureInvariantError, AutomatonError, DifferenceExplosion) as exc:
        raise StructureFileError(f"invariant violated: {exc}", source) from exc


def _load_alphabet(doc: dict, rd: _Reader, path: tuple) -> Alphabet:
    gens = rd.get(doc, path, "generators", list)
    inverses = rd.get(doc, path, "inverses", list, None)
    juxtapose = rd.get(doc, path, "juxtapose", bool, False)
    if not gens:
        raise rd.fail(path + ("generators",), "no generators declared")
    if inverses is not None and len(inverses) != len(gens):
        raise rd.fail(path + ("inverses",), f"{len(gens)} generators but {len(inverses)} inverses; "
                                            "every generator must be paired with one inverse")
    try:
        return Alphabet.from_generators([str(g) for g in gens],
                                        None if inverses is None else [str(h) for h in inverses],
                                        juxtapose)
    except ValueError as exc:
        raise rd.fail(path, str(exc)) from exc


def _load(doc: dict, rd: _Reader, base: Path | None) -> Structure:
    name = str(rd.get(doc, (), "name", default="structure"))
    alphabet = _load_alphabet(rd.get(doc, (), "alphabet", dict), rd, ("alphabet",))
    builder = rd.get(doc, (), "builder", dict)
    consts = rd.get(doc, (), "constants", dict, {})
    declared = None
    if "oracle" in doc:
        try:
            declared = oracle_from_description(rd.get(doc, (), "oracle", dict))
        except (KeyError, ValueError, TypeError) as exc:
            raise rd.fail(("oracle",), f"bad oracle description: {exc}") from exc
        if declared.num_letters != len(alphabet):
            raise rd.fail(("oracle",), "oracle letter count does not match the alphabet")
    if rd.get(builder, ("builder",), "kind", str) == "explicit":
        combing = _load_explicit(builder, alphabet, consts, doc, declared, rd, ("builder",))
        oracle = declared
    else:
        combing, oracle = _build(builder, alphabet, consts, rd, ("builder",), base)
        oracle = declared or oracle
        combing = _apply_constants(combing, consts, oracle, rd, doc)
    combing = dataclasses.replace(combing, name=name)
    st = Structure(name, combing, oracle)
    for sub_name, sub in rd.get(doc, (), "subgroups", dict, {}).items():
        path = ("subgroups", sub_name)
        emb, rels = _load_subgroup(str(sub_name), sub, alphabet, rd, path)
        st.embeddings[str(sub_name)] = emb
        st.relators[str(sub_name)] = rels
    return st


def _build(builder: dict, alphabet: Alphabet, consts: dict, rd: _Reader, path: tuple,
           base: Path | None) -> tuple[Combing, GroupOracle | None]:
    kind = rd.get(builder, path, "kind", str)
    bound = rd.get(consts, ("constants",), "departure_bound", int, DEFAULT_DEPARTURE_BOUND)
    if kind == "free":
        rank = rd.get(builder, path, "rank", int, len(alphabet) // 2)
        if 2 * rank != len(alphabet):
            raise rd.fail(path + ("rank",), f"rank {rank} needs {2 * rank} letters, alphabet has {len(alphabet)}")
        try:
            return build_free_group_structure(rank, alphabet, bound), FreeOracle(rank)
        except StructureInvariantError as exc:
            raise rd.fail(("alphabet",), str(exc)) from exc
    if kind == "product":
        factors = rd.get(builder, path, "factors", list)
        if len(factors) < 2:
            raise rd.fail(path + ("factors",), "a product needs at least two factors")
        parts = [_load_factor(f, rd, path + ("factors", i), base) for i, f in enumerate(factors)]
        if sum(len(c.alphabet) for c, _ in parts) != len(alphabet):
            raise rd.fail(("alphabet",), "alphabet size does not match the factors")
        max_diff = rd.get(consts, ("constants",), "max_diff_len", int, None)
        c, o = parts[0]
        for i, (c2, o2) in enumerate(parts[1:], start=1):
            last = i == len(parts) - 1
            try:
                c = build_direct_product(c, c2, o, o2, alphabet if last else None,
                                         max_diff if last else None)
            except StructureInvariantError as exc:
                raise rd.fail(path + ("factors", i), str(exc)) from exc
            o = ProductOracle([o, o2])
        return c, o
    raise rd.fail(path + ("kind",), f"unknown builder kind {kind!r}")


def _load_factor(entry: Any, rd: _Reader, path: tuple, base: Path | None):
    if not isinstance(entry, dict):
        raise rd.fail(path, "factor must be a mapping")
    if "ref" in entry:
        try:
            st = load_structure(resolve_structure_path(entry["ref"], base))
        except FileNotFoundError as exc:
            raise rd.fail(path + ("ref",), str(exc)) from exc
        if st.oracle is None:
            raise rd.fail(path + ("ref",), "referenced structure declares no oracle")
        return st.combing, st.oracle
    kind = rd.get(entry, path, "kind", str)
    if kind != "free":
        raise rd.fail(path + ("kind",), "inline factors must be free groups; use ref for others")
    rank = rd.get(entry, path, "rank", int)
    return build_free_group_structure(rank), FreeOracle(rank)


def _letter(alphabet: Alphabet, token: Any, rd: _Reader, path: tuple, pad_ok: bool = False) -> int:
    if pad_ok and token == PAD_TOKEN:
        return PAD
    try:
        return alphabet.letter(str(token))
    except WordSyntaxError as exc:
        raise rd.fail(path, str(exc)) from exc


def _int_list(doc: dict, path: tuple, key: str, rd: _Reader) -> list[int]:
    values = rd.get(doc, path, key, list)
    for i, v in enumerate(values):
        if not isinstance(v, int):
            raise rd.fail(path + (key, i), "expected an integer")
    return values


def _load_fsa(doc: dict, alphabet: Alphabet, rd: _Reader, path: tuple) -> Fsa:
    n = rd.get(doc, path, "states", int)
    initial = rd.get(doc, path, "initial", int)
    accepting = _int_list(doc, path, "accepting", rd)
    triples = []
    for i, row in enumerate(rd.get(doc, path, "transitions", list)):
        rp = path + ("transitions", i)
        if not (isinstance(row, list) and len(row) == 3):
            raise rd.fail(rp, "transition must be [state, letter, target]")
        triples.append((row[0], _letter(alphabet, row[1], rd, rp), row[2]))
    try:
        return Fsa.from_triples(len(alphabet), n, initial, accepting, triples)
    except AutomatonError as exc:
        raise rd.fail(path, str(exc)) from exc


def _load_two_tape(doc: dict, alphabet: Alphabet, rd: _Reader, path: tuple) -> TwoTapeAutomaton:
    n = rd.get(doc, path, "states", int)
    initial = rd.get(doc, path, "initial", int)
    accepting = _int_list(doc, path, "accepting", rd)
    max_lag = rd.get(doc, path, "max_lag", int)
    quads = []
    for i, row in enumerate(rd.get(doc, path, "transitions", list)):
        rp = path + ("transitions", i)
        if not (isinstance(row, list) and len(row) == 4):
            raise rd.fail(rp, "transition must be [state, left, right, target]")
        quads.append((row[0], _letter(alphabet, row[1], rd, rp, True),
                      _letter(alphabet, row[2], rd, rp, True), row[3]))
    try:
        return TwoTapeAutomaton.from_quads(len(alphabet), n, initial, accepting, quads, max_lag)
    except AutomatonError as exc:
        raise rd.fail(path, str(exc)) from exc


def _load_explicit(builder: dict, alphabet: Alphabet, consts: dict, doc: dict,
                   oracle: GroupOracle | None, rd: _Reader, path: tuple) -> Combing:
    acceptor = _load_fsa(rd.get(builder, path, "acceptor", dict), alphabet, rd, path + ("acceptor",))
    mdoc = rd.get(builder, path, "multipliers", dict)
    mults = {}
    for key, entry in mdoc.items():
        mp = path + ("multipliers", key)
        x = _letter(alphabet, key, rd, mp)
        if not isinstance(entry, dict):
            raise rd.fail(mp, "expected a mapping")
        mults[x] = _load_two_tape(entry, alphabet, rd, mp)
    missing = [alphabet.names[x] for x in range(len(alphabet)) if x not in mults]
    if missing:
        raise rd.fail(path + ("multipliers",), f"no multiplier for letters {missing}")
    eq = None
    if "equality" in builder:
        eq = _load_two_tape(rd.get(builder, path, "equality", dict), alphabet, rd, path + ("equality",))
    cp = ("constants",)
    bound = rd.get(consts, cp, "departure_bound", int, DEFAULT_DEPARTURE_BOUND)
    epsilon = _fraction(rd.get(consts, cp, "epsilon"), rd, "epsilon")
    identity_words = _identity_words(doc, alphabet, acceptor, oracle, epsilon, rd)
    try:
        return Combing(
            alphabet=alphabet,
            acceptor=acceptor,
            multipliers=mults,
            lam=_fraction(rd.get(consts, cp, "lambda"), rd, "lambda"),
            epsilon=epsilon,
            departure=_departure(rd.get(consts, cp, "departure"), bound, rd),
            fellow_traveler_k=rd.get(consts, cp, "fellow_traveler_k", int),
            uniqueness=rd.get(consts, cp, "uniqueness", bool),
            identity_words=identity_words,
            equality=eq,
        )
    except StructureInvariantError as exc:
        raise rd.fail(cp, str(exc)) from exc


def _identity_words(doc: dict, alphabet: Alphabet, acceptor: Fsa, oracle: GroupOracle | None,
                    epsilon: Fraction, rd: _Reader) -> frozenset[Word]:
    if "identity_words" not in doc:
        if oracle is None:
            raise rd.fail(("identity_words",), "identity_words required when no oracle is declared")
        return identity_set(acceptor, oracle, epsilon)
    words = []
    for i, text in enumerate(rd.get(doc, (), "identity_words", list)):
        try:
            words.append(alphabet.parse(str(text)))
        except WordSyntaxError as exc:
            raise rd.fail(("identity_words", i), str(exc)) from exc
    return frozenset(words)


def _departure(value: Any, bound: int, rd: _Reader) -> tuple[int, ...]:
    if value == "identity":
        return tuple(range(1, bound + 1))
    if isinstance(value, list) and all(isinstance(d, int) for d in value):
        return tuple(value)
    raise rd.fail(("constants", "departure"), "expected 'identity' or a list of integers")


def _fraction(value: Any, rd: _Reader, key: str) -> Fraction:
    try:
        return Fraction(str(value))
    except (ValueError, ZeroDivisionError) as exc:
        raise rd.fail(("constants", key), f"not a rational number: {value!r}") from exc


def _apply_constants(c: Combing, consts: dict, oracle: GroupOracle | None, rd: _Reader,
                     doc: dict) -> Combing:
    """Override builder defaults with declared constants."""
    cp = ("constants",)
    bound = rd.get(consts, cp, "departure_bound", int, DEFAULT_DEPARTURE_BOUND)
    changes: dict[str, Any] = {}
    if "lambda" in consts:
        changes["lam"] = _fraction(consts["lambda"], rd, "lambda")
    if "epsilon" in consts:
        changes["epsilon"] = _fraction(consts["epsilon"], rd, "epsilon")
    if "fellow_traveler_k" in consts:
        changes["fellow_traveler_k"] = rd.get(consts, cp, "fellow_traveler_k", int)
    if "departure" in consts:
        changes["departure"] = _departure(consts["departure"], bound, rd)
    if "uniqueness" in consts:
        changes["uniqueness"] = rd.get(consts, cp, "uniqueness", bool)
    if "identity_words" in doc or "epsilon" in changes:
        changes["identity_words"] = _identity_words(
            doc, c.alphabet, c.acceptor, oracle, changes.get("epsilon", c.epsilon), rd)
    try:
        return dataclasses.replace(c, **changes)
    except StructureInvariantError as exc:
        raise rd.fail(cp, str(exc)) from exc


def _load_subgroup(name: str, sub: Any, ambient: Alphabet, rd: _Reader,
                   path: tuple) -> tuple[SubgroupEmbedding, list[Word]]:
    if not isinstance(sub, dict):
        raise rd.fail(path, "expected a mapping")
    sub_alphabet = _load_alphabet(sub, rd, path)
    images_doc = rd.get(sub, path, "images", dict)
    images: dict[int, Word] = {}
    for key, text in images_doc.items():
        ip = path + ("images", key)
        b = _letter(sub_alphabet, key, rd, ip)
        try:
            images[b] = ambient.parse(str(text))
        except WordSyntaxError as exc:
            raise rd.fail(ip, str(exc)) from exc
    for g in rd.get(sub, path, "generators", list):
        b = sub_alphabet.letter(str(g))
        if b not in images:
            raise rd.fail(path + ("images",), f"no image for generator {g!r}")
    try:
        emb = SubgroupEmbedding.from_generators(sub_alphabet, ambient, images, name)
    except ValueError as exc:
        raise rd.fail(path, str(exc)) from exc
    rels = []
    for i, text in enumerate(rd.get(sub, path, "relators", list, [])):
        try:
            rels.append(sub_alphabet.parse(str(text)))
        except WordSyntaxError as exc:
            raise rd.fail(path + ("relators", i), str(exc)) from exc
    return emb, rels


# -- writing ---------------------------------------------------------------


def _fsa_doc(m: Fsa, alphabet: Alphabet) -> dict:
    return {
        "states": m.num_states,
        "initial": m.initial,
        "accepting": sorted(m.accepting),
        "transitions": [[s, alphabet.names[a], t] for (s, a), t in sorted(m.transitions.items())],
    }


def _two_tape_doc(m: TwoTapeAutomaton, alphabet: Alphabet) -> dict:
    def tok(x: int) -> str:
        return PAD_TOKEN if x == PAD else alphabet.names[x]

    return {
        "states": m.num_states,
        "initial": m.initial,
        "accepting": sorted(m.accepting),
        "max_lag": m.max_lag,
        "transitions": [[s, tok(l), tok(r), t] for (s, (l, r)), t in sorted(m.transitions.items())],
    }


def _num(q: Fraction):
    return int(q) if q.denominator == 1 else str(q)


def structure_document(st: Structure) -> dict:
    c = st.combing
    a = c.alphabet
    gens = [a.names[x] for x in range(len(a)) if x <= a.inverse[x]]
    builder: dict[str, Any] = {
        "kind": "explicit",
        "acceptor": _fsa_doc(c.acceptor, a),
        "multipliers": {a.names[x]: _two_tape_doc(m, a) for x, m in sorted(c.multipliers.items())},
    }
    if c.equality is not None:
        builder["equality"] = _two_tape_doc(c.equality, a)
    doc: dict[str, Any] = {
        "name": st.name,
        "alphabet": {
            "generators": gens,
            "inverses": [a.names[a.inverse[a.letter(g)]] for g in gens],
            "juxtapose": a.juxtapose,
        },
        "builder": builder,
        "constants": {
            "lambda": _num(c.lam),
            "epsilon": _num(c.epsilon),
            "fellow_traveler_k": c.fellow_traveler_k,
            "departure": list(c.departure),
            "uniqueness": c.uniqueness,
        },
        "identity_words": sorted(a.format(w) for w in c.identity_words),
    }
    if st.oracle is not None:
        doc["oracle"] = st.oracle.describe()
    if st.embeddings:
        subs = {}
        for name, emb in st.embeddings.items():
            b = emb.sub_alphabet
            bgens = [b.names[x] for x in range(len(b)) if x <= b.inverse[x]]
            subs[name] = {
                "generators": bgens,
                "inverses": [b.names[b.inverse[b.letter(g)]] for g in bgens],
                "images": {g: a.format(emb.generator_words[b.letter(g)]) for g in bgens},
                "relators": [b.format(r) for r in st.relators.get(name, [])],
            }
        doc["subgroups"] = subs
    return doc


def dump_structure(st: Structure) -> str:
    return yaml.safe_dump(structure_document(st), sort_keys=False, default_flow_style=None, width=100)


def write_structure(st: Structure, path: str | Path) -> None:
    Path(path).write_text(dump_structure(st))
