"""Builders for concrete combings and bounded-scale hypothesis validators.

Multipliers are built by the word-difference method: a run over a padded
pair ``(u, v)`` tracks ``g = eval(u_prefix)^-1 * eval(v_prefix)`` through the
oracle, and accepts when both tapes are accepted and ``g == eval(x)``.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Hashable, Sequence

from .fsa import PAD, AutomatonError, Fsa, TwoTapeAutomaton, enumerate_accepted
from .oracle import FreeOracle, GroupOracle, ProductOracle
from .structure import Combing, StructureInvariantError
from .words import EMPTY, Alphabet, Word

# marks a tape that has already ended inside a difference-graph state
END = -1

DEFAULT_DEPARTURE_BOUND = 64


class DifferenceExplosion(RuntimeError):
    """Bounded word differences do not suffice to build a multiplier."""

    def __init__(self, message: str, witness: Word | None = None):
        super().__init__(message)
        self.witness = witness


@dataclass
class _DifferenceGraph:
    states: list[tuple[int, int, Hashable]]
    edges: list[list[tuple[tuple[int, int], int]]]


@lru_cache(maxsize=32)
def _difference_graph(acceptor: Fsa, oracle: GroupOracle, bound: int) -> _DifferenceGraph:
    n = acceptor.size
    value = [oracle.letter_value(x) for x in range(n)]
    inv_value = [oracle.inverse(g) for g in value]
    one = oracle.identity

    def moves(p: int) -> list[tuple[int, int]]:
        # (letter-or-PAD, next state) available to one tape in state p
        if p == END:
            return [(PAD, END)]
        out = [(PAD, END)] if p in acceptor.accepting else []
        for a in range(n):
            t = acceptor.transitions.get((p, a))
            if t is not None:
                out.append((a, t))
        return out

    start = (acceptor.initial, acceptor.initial, one)
    index = {start: 0}
    states = [start]
    edges: list[list[tuple[tuple[int, int], int]]] = []
    move_cache: dict[int, list[tuple[int, int]]] = {}
    i = 0
    while i < len(states):
        p, q, g = states[i]
        i += 1
        out: list[tuple[tuple[int, int], int]] = []
        pm = move_cache.get(p) or move_cache.setdefault(p, moves(p))
        qm = move_cache.get(q) or move_cache.setdefault(q, moves(q))
        for l, np in pm:
            left = g if l == PAD else oracle.multiply(inv_value[l], g)
            for r, nq in qm:
                if l == PAD and r == PAD:
                    continue
                h = left if r == PAD else oracle.multiply(left, value[r])
                if oracle.length(h) > bound:
                    continue
                key = (np, nq, h)
                j = index.get(key)
                if j is None:
                    j = index[key] = len(states)
                    states.append(key)
                out.append(((l, r), j))
        edges.append(out)
    return _DifferenceGraph(states, edges)


def build_multiplier_from_differences(
    acceptor: Fsa,
    oracle: GroupOracle,
    x: int | None,
    max_diff_len: int,
) -> TwoTapeAutomaton:
    """Two-tape automaton accepting ``(u, v)`` in L x L with ``u x = v``.

    ``x=None`` builds the equality recognizer. Only differences of length
    <= ``max_diff_len`` are tracked; if that loses some ``u`` in L its
    partner, :class:`DifferenceExplosion` is raised with ``u`` as witness.
    """
    if acceptor.size != oracle.num_letters:
        raise ValueError("acceptor and oracle alphabets differ in size")
    graph = _difference_graph(acceptor, oracle, max_diff_len)
    final, live = _live_states(graph, acceptor, oracle, x)
    if 0 not in live:
        raise DifferenceExplosion(f"no accepted pair for letter {x} within difference bound {max_diff_len}")

    # renumber live states breadth-first from the start
    order = [0]
    number = {0: 0}
    quads: list[tuple[int, int, int, int]] = []
    k = 0
    while k < len(order):
        i = order[k]
        k += 1
        for (l, r), j in graph.edges[i]:
            if j not in live:
                continue
            if j not in number:
                number[j] = len(order)
                order.append(j)
            quads.append((number[i], l, r, number[j]))

    padded = {number[i] for i in order if END in graph.states[i][:2]}
    max_lag = _longest_padding(quads, padded)
    m = TwoTapeAutomaton.from_quads(
        acceptor.size,
        len(order),
        0,
        [number[i] for i in order if i in final],
        quads,
        max_lag,
    )
    witness = _uncovered_word(acceptor, m)
    if witness is not None:
        raise DifferenceExplosion(
            f"word {witness} has no partner for letter {x} within difference bound {max_diff_len}",
            witness,
        )
    return m


def _live_states(graph: _DifferenceGraph, acceptor: Fsa, oracle: GroupOracle,
                 x: int | None) -> tuple[set[int], set[int]]:
    """(accepting, co-accessible) state indices of the difference graph."""
    target = oracle.identity if x is None else oracle.letter_value(x)
    acc = acceptor.accepting
    final = {
        i for i, (p, q, g) in enumerate(graph.states)
        if (p == END or p in acc) and (q == END or q in acc) and g == target
    }
    back: dict[int, list[int]] = {}
    for i, out in enumerate(graph.edges):
        for _, j in out:
            back.setdefault(j, []).append(i)
    live = set(final)
    todo = list(final)
    while todo:
        j = todo.pop()
        for i in back.get(j, ()):
            if i not in live:
                live.add(i)
                todo.append(i)
    return final, live


def multiplier_differences(acceptor: Fsa, oracle: GroupOracle, x: int | None,
                           max_diff_len: int) -> set:
    """Word differences carried by the states of the built multiplier."""
    graph = _difference_graph(acceptor, oracle, max_diff_len)
    _, live = _live_states(graph, acceptor, oracle, x)
    return {graph.states[i][2] for i in live}


def _longest_padding(quads, padded: set[int]) -> int:
    preds: dict[int, list[int]] = {s: [] for s in padded}
    for s, _, _, t in quads:
        if t in padded and s in padded:
            preds[t].append(s)
    depth: dict[int, int] = {}
    visiting: set[int] = set()

    def visit(s: int) -> int:
        if s in depth:
            return depth[s]
        if s in visiting:
            raise AutomatonError("padded tail admits a cycle; lag is unbounded")
        visiting.add(s)
        d = 1 + max((visit(p) for p in preds[s]), default=0)
        visiting.discard(s)
        depth[s] = d
        return d

    return max((visit(s) for s in padded), default=0)


def _uncovered_word(acceptor: Fsa, m: TwoTapeAutomaton) -> Word | None:
    """Shortest accepted u with no accepting run of ``m`` reading u on the
    first tape, or None when the first-tape projection covers L."""
    by_left: dict[tuple[int, int], list[int]] = {}
    pad_left: dict[int, list[int]] = {}
    for (s, (l, r)), t in m.transitions.items():
        if l == PAD:
            pad_left.setdefault(s, []).append(t)
        else:
            by_left.setdefault((s, l), []).append(t)
    # states finishing with first tape exhausted
    finishing = set(m.accepting)
    changed = True
    while changed:
        changed = False
        for s, targets in pad_left.items():
            if s not in finishing and any(t in finishing for t in targets):
                finishing.add(s)
                changed = True

    start = (acceptor.initial, frozenset([m.initial]))
    parent: dict = {start: None}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        p, subset = node
        if p in acceptor.accepting and not (subset & finishing):
            word: list[int] = []
            while parent[node] is not None:
                node, a = parent[node]
                word.append(a)
            return tuple(reversed(word))
        for a in range(acceptor.size):
            np = acceptor.transitions.get((p, a))
            if np is None:
                continue
            nxt = frozenset(t for s in subset for t in by_left.get((s, a), ()))
            child = (np, nxt)
            if child not in parent:
                parent[child] = (node, a)
                queue.append(child)
    return None


def build_multipliers(
    acceptor: Fsa, oracle: GroupOracle, max_diff_len: int
) -> tuple[dict[int, TwoTapeAutomaton], TwoTapeAutomaton]:
    mults = {
        x: build_multiplier_from_differences(acceptor, oracle, x, max_diff_len)
        for x in range(acceptor.size)
    }
    return mults, build_multiplier_from_differences(acceptor, oracle, None, max_diff_len)


def free_reduced_acceptor(rank: int) -> Fsa:
    """State 0 is the start; state 1 + x means the last letter read was x."""
    size = 2 * rank
    triples = [
        (s, a, 1 + a)
        for s in range(size + 1)
        for a in range(size)
        if s == 0 or (s - 1) != a ^ 1
    ]
    return Fsa.from_triples(size, size + 1, 0, range(size + 1), triples)


def identity_set(acceptor: Fsa, o: GroupOracle, epsilon) -> frozenset[Word]:
    bound = math.floor(Fraction(epsilon))
    return frozenset(
        w for w in enumerate_accepted(acceptor, bound) if o.is_identity(o.evaluate(w))
    )


def build_free_group_structure(
    rank: int,
    alphabet: Alphabet | None = None,
    departure_bound: int = DEFAULT_DEPARTURE_BOUND,
) -> Combing:
    """Short-lex automatic structure of the free group on ``rank`` generators."""
    if rank < 1:
        raise ValueError("rank must be positive")
    if alphabet is None:
        alphabet = Alphabet.from_generators("abcdefghijklmnopqrstuvwxyz"[:rank] if rank <= 26
                                            else [f"x{i}" for i in range(rank)])
    oracle = FreeOracle(rank)
    _check_layout(alphabet, oracle)
    acceptor = free_reduced_acceptor(rank)
    k = 1
    mults, eq = build_multipliers(acceptor, oracle, 2 * k)
    return Combing(
        alphabet=alphabet,
        acceptor=acceptor,
        multipliers=mults,
        lam=Fraction(1),
        epsilon=Fraction(0),
        departure=tuple(range(1, departure_bound + 1)),
        fellow_traveler_k=k,
        uniqueness=True,
        identity_words=frozenset([EMPTY]),
        name=f"F{rank}",
        equality=eq,
    )


def concatenation_acceptor(a1: Fsa, a2: Fsa) -> Fsa:
    """Acceptor for L1 L2 over the block alphabet (letters of ``a1`` first).

    Deterministic because the two alphabets are disjoint.
    """
    off_s, off_a = a1.num_states, a1.size
    triples = [(s, a, t) for (s, a), t in a1.transitions.items()]
    triples += [(off_s + s, off_a + a, off_s + t) for (s, a), t in a2.transitions.items()]
    for p in a1.accepting:
        for (s, a), t in a2.transitions.items():
            if s == a2.initial:
                triples.append((p, off_a + a, off_s + t))
    accepting = {off_s + q for q in a2.accepting}
    if a2.initial in a2.accepting:
        accepting |= set(a1.accepting)
    return Fsa.from_triples(a1.size + a2.size, a1.num_states + a2.num_states,
                            a1.initial, accepting, triples)


def build_direct_product(
    c1: Combing,
    c2: Combing,
    o1: GroupOracle,
    o2: GroupOracle,
    alphabet: Alphabet | None = None,
    max_diff_len: int | None = None,
) -> Combing:
    """Combing of G1 x G2 with normal forms u1 u2 (factor-1 letters first)."""
    if not (c1.uniqueness and c2.uniqueness):
        raise StructureInvariantError("direct product needs factors with uniqueness")
    oracle = ProductOracle([o1, o2])
    if alphabet is None:
        names = [s + "1" for s in c1.alphabet.names] + [s + "2" for s in c2.alphabet.names]
        inverse = list(c1.alphabet.inverse) + [len(c1.alphabet) + j for j in c2.alphabet.inverse]
        alphabet = Alphabet(tuple(names), tuple(inverse))
    _check_layout(alphabet, oracle)
    acceptor = concatenation_acceptor(c1.acceptor, c2.acceptor)
    k = c1.fellow_traveler_k + c2.fellow_traveler_k
    if max_diff_len is None:
        max_diff_len = 2 * k
    mults, eq = build_multipliers(acceptor, oracle, max_diff_len)
    bound = min(len(c1.departure), len(c2.departure))
    epsilon = c1.epsilon + c2.epsilon
    return Combing(
        alphabet=alphabet,
        acceptor=acceptor,
        multipliers=mults,
        lam=max(c1.lam, c2.lam),
        epsilon=epsilon,
        # a subword of length D1(n) + D2(n) has a long enough part in one factor
        departure=tuple(c1.departure[i] + c2.departure[i] for i in range(bound)),
        fellow_traveler_k=k,
        uniqueness=True,
        identity_words=identity_set(acceptor, oracle, epsilon),
        name=f"{c1.name}x{c2.name}",
        equality=eq,
    )


def _check_layout(alphabet: Alphabet, oracle: GroupOracle) -> None:
    if len(alphabet) != oracle.num_letters:
        raise StructureInvariantError(
            f"alphabet has {len(alphabet)} letters but the group needs {oracle.num_letters}"
        )
    for x in range(len(alphabet)):
        if oracle.letter_value(alphabet.inverse[x]) != oracle.inverse(oracle.letter_value(x)):
            raise StructureInvariantError(
                f"letter {alphabet.names[x]!r} is not paired with its group inverse"
            )


# -- validators ------------------------------------------------------------


def validate_shortness(c: Combing, o: GroupOracle, max_len: int) -> bool:
    return all(
        len(w) <= c.lam * o.length(o.evaluate(w)) + c.epsilon
        for w in enumerate_accepted(c.acceptor, max_len)
    )


def validate_departure(c: Combing, o: GroupOracle, max_len: int) -> bool:
    """Every subword y of an accepted word with len(y) >= D(n) has
    geodesic length >= n."""
    if len(c.departure) < max_len:
        raise ValueError(f"departure table covers n <= {len(c.departure)}, need {max_len}")
    for w in enumerate_accepted(c.acceptor, max_len):
        for i in range(len(w)):
            g = o.identity
            for j in range(i, len(w)):
                g = o.multiply(g, o.letter_value(w[j]))
                sub_len = j - i + 1
                # largest n with D(n) <= sub_len (table is nondecreasing)
                n = sum(1 for d in c.departure if d <= sub_len)
                if o.length(g) < n:
                    return False
    return True


def multiplier_partners(m: TwoTapeAutomaton, u: Sequence[int], max_len: int) -> set[Word]:
    """All v with len(v) <= max_len such that ``m`` accepts (u, v)."""
    found: set[Word] = set()
    out: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for (s, (l, r)), t in m.transitions.items():
        out.setdefault((s, l), []).append((r, t))

    def search(state: int, pos: int, v: list[int], ended: bool) -> None:
        if pos >= len(u) and (ended or pos == len(v)):
            if state in m.accepting and abs(len(u) - len(v)) <= m.max_lag:
                found.add(tuple(v))
            if ended:
                return
        left = u[pos] if pos < len(u) else PAD
        for r, t in out.get((state, left), ()):
            if r == PAD:
                if left == PAD:
                    continue
                search(t, pos + 1, v, True)
            elif not ended and len(v) < max_len:
                v.append(r)
                search(t, pos + 1, v, False)
                v.pop()

    search(m.initial, 0, [], False)
    return found


def validate_multipliers(c: Combing, o: GroupOracle, max_len: int) -> bool:
    """accepts_pair(M_x, u, v) iff u x = v, for all accepted u, v of
    length <= max_len."""
    words = enumerate_accepted(c.acceptor, max_len)
    by_value: dict = {}
    for w in words:
        by_value.setdefault(o.evaluate(w), set()).add(w)
    for x, m in sorted(c.multipliers.items()):
        gx = o.letter_value(x)
        for u in words:
            expected = by_value.get(o.multiply(o.evaluate(u), gx), set())
            if multiplier_partners(m, u, max_len) != expected:
                return False
    return True


def validate_identity_set(c: Combing, o: GroupOracle) -> bool:
    return c.identity_words == identity_set(c.acceptor, o, c.epsilon)


def validate_all(c: Combing, o: GroupOracle, max_len: int) -> dict[str, bool]:
    return {
        "short": validate_shortness(c, o, max_len),
        "departure": validate_departure(c, o, max_len),
        "multipliers": validate_multipliers(c, o, max_len),
        "identity": validate_identity_set(c, o),
    }
