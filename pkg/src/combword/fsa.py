"""Deterministic one-tape acceptors and padded two-tape automata."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .words import EMPTY, Word

# padding symbol on a two-tape input; never a letter index
PAD = -1

PairLetter = tuple[int, int]


class AutomatonError(ValueError):
    pass


def _freeze(mapping: Mapping) -> dict:
    return dict(mapping)


@dataclass(frozen=True, eq=False)
class Fsa:
    """Deterministic partial automaton over letters ``0..size-1``.

    States are ``0..num_states-1``; missing transitions reject.
    """

    size: int
    num_states: int
    initial: int
    accepting: frozenset[int]
    transitions: Mapping[tuple[int, int], int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        object.__setattr__(self, "transitions", _freeze(self.transitions))
        states = range(self.num_states)
        if self.initial not in states:
            raise AutomatonError(f"initial state {self.initial} is not declared")
        if not self.accepting <= set(states):
            raise AutomatonError("accepting set names undeclared states")
        for (s, a), t in self.transitions.items():
            if s not in states or t not in states:
                raise AutomatonError(f"transition {s} -{a}-> {t} uses an undeclared state")
            if not 0 <= a < self.size:
                raise AutomatonError(f"transition {s} -{a}-> {t} uses an unknown letter")

    @classmethod
    def from_triples(
        cls,
        size: int,
        num_states: int,
        initial: int,
        accepting: Iterable[int],
        triples: Iterable[tuple[int, int, int]],
    ) -> "Fsa":
        """Build from ``(state, letter, target)`` triples, rejecting
        nondeterministic input instead of determinizing it."""
        table: dict[tuple[int, int], int] = {}
        for s, a, t in triples:
            if (s, a) in table and table[s, a] != t:
                raise AutomatonError(f"nondeterministic transition from state {s} on letter {a}")
            table[s, a] = t
        return cls(size, num_states, initial, frozenset(accepting), table)

    def step(self, state: int | None, letter: int) -> int | None:
        if state is None:
            return None
        return self.transitions.get((state, letter))

    def run(self, w: Iterable[int]) -> int | None:
        state: int | None = self.initial
        for x in w:
            state = self.transitions.get((state, x))
            if state is None:
                return None
        return state

    def accepts(self, w: Iterable[int]) -> bool:
        return self.run(w) in self.accepting

    def coaccessible(self) -> set[int]:
        """States from which some accepting state is reachable."""
        back: dict[int, list[int]] = {}
        for (s, _), t in self.transitions.items():
            back.setdefault(t, []).append(s)
        seen = set(self.accepting)
        todo = list(seen)
        while todo:
            t = todo.pop()
            for s in back.get(t, ()):
                if s not in seen:
                    seen.add(s)
                    todo.append(s)
        return seen

    def is_empty(self) -> bool:
        return self.initial not in self.coaccessible()


def accepts(m: Fsa, w: Sequence[int]) -> bool:
    return m.accepts(w)


def enumerate_accepted(m: Fsa, max_len: int) -> list[Word]:
    """Accepted words of length <= max_len in short-lex order.

    Depth-first in letter order per length, pruning prefixes that cannot
    reach an accepting state.
    """
    live = m.coaccessible()
    out: list[Word] = []

    def extend(prefix: list[int], state: int, remaining: int) -> Iterator[Word]:
        if remaining == 0:
            if state in m.accepting:
                yield tuple(prefix)
            return
        for a in range(m.size):
            t = m.transitions.get((state, a))
            if t is None or t not in live:
                continue
            prefix.append(a)
            yield from extend(prefix, t, remaining - 1)
            prefix.pop()

    if m.initial not in live:
        return out
    for k in range(max_len + 1):
        out.extend(extend([], m.initial, k))
    return out


def padded_pairs(u: Sequence[int], v: Sequence[int]) -> list[PairLetter]:
    """Synchronous pairing of ``u`` and ``v``, right-padding the shorter."""
    n = max(len(u), len(v))
    return [
        (u[i] if i < len(u) else PAD, v[i] if i < len(v) else PAD)
        for i in range(n)
    ]


@dataclass(frozen=True, eq=False)
class TwoTapeAutomaton:
    """Deterministic automaton over padded pair letters.

    ``max_lag`` bounds ``|len(u) - len(v)|`` over accepted pairs; inputs
    further apart are rejected without running.
    """

    size: int
    num_states: int
    initial: int
    accepting: frozenset[int]
    transitions: Mapping[tuple[int, PairLetter], int]
    max_lag: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        object.__setattr__(self, "transitions", _freeze(self.transitions))
        states = range(self.num_states)
        if self.initial not in states:
            raise AutomatonError(f"initial state {self.initial} is not declared")
        if not self.accepting <= set(states):
            raise AutomatonError("accepting set names undeclared states")
        if self.max_lag < 0:
            raise AutomatonError("max_lag must be nonnegative")
        letters = range(-1, self.size)
        for (s, (l, r)), t in self.transitions.items():
            if s not in states or t not in states:
                raise AutomatonError(f"transition from {s} to {t} uses an undeclared state")
            if l not in letters or r not in letters:
                raise AutomatonError(f"transition from {s} on ({l}, {r}) uses an unknown letter")
            if l == PAD and r == PAD:
                raise AutomatonError(f"transition from {s} reads (pad, pad)")
        self._check_padding()

    @classmethod
    def from_quads(
        cls,
        size: int,
        num_states: int,
        initial: int,
        accepting: Iterable[int],
        quads: Iterable[tuple[int, int, int, int]],
        max_lag: int,
    ) -> "TwoTapeAutomaton":
        table: dict[tuple[int, PairLetter], int] = {}
        for s, l, r, t in quads:
            key = (s, (l, r))
            if key in table and table[key] != t:
                raise AutomatonError(f"nondeterministic transition from state {s} on ({l}, {r})")
            table[key] = t
        return cls(size, num_states, initial, frozenset(accepting), table, max_lag)

    def _check_padding(self) -> None:
        # once a tape reads padding it may only read padding
        seen = {(self.initial, False, False)}
        todo = [(self.initial, False, False)]
        out: dict[int, list[tuple[PairLetter, int]]] = {}
        for (s, pair), t in self.transitions.items():
            out.setdefault(s, []).append((pair, t))
        while todo:
            s, lend, rend = todo.pop()
            for (l, r), t in out.get(s, ()):
                if (lend and l != PAD) or (rend and r != PAD):
                    raise AutomatonError(
                        f"state {s} reads a letter on a tape that has already ended"
                    )
                cfg = (t, lend or l == PAD, rend or r == PAD)
                if cfg not in seen:
                    seen.add(cfg)
                    todo.append(cfg)

    def step(self, state: int | None, pair: PairLetter) -> int | None:
        if state is None:
            return None
        return self.transitions.get((state, pair))

    def accepts_pair(self, u: Sequence[int], v: Sequence[int]) -> bool:
        if abs(len(u) - len(v)) > self.max_lag:
            return False
        state: int | None = self.initial
        for pair in padded_pairs(u, v):
            state = self.transitions.get((state, pair))
            if state is None:
                return False
        return state in self.accepting

    def accepted_pairs(self, max_len: int) -> set[tuple[Word, Word]]:
        """All accepted pairs with both tapes of length <= max_len
        (breadth-first over runs, both tapes at most ``max_len`` long)."""
        found: set[tuple[Word, Word]] = set()
        frontier = deque([(self.initial, EMPTY, EMPTY, False, False)])
        out: dict[int, list[tuple[PairLetter, int]]] = {}
        for (s, pair), t in self.transitions.items():
            out.setdefault(s, []).append((pair, t))
        while frontier:
            s, u, v, lend, rend = frontier.popleft()
            if s in self.accepting and abs(len(u) - len(v)) <= self.max_lag:
                found.add((u, v))
            for (l, r), t in out.get(s, ()):
                if (lend and l != PAD) or (rend and r != PAD):
                    continue
                nu = u if l == PAD else u + (l,)
                nv = v if r == PAD else v + (r,)
                if len(nu) > max_len or len(nv) > max_len:
                    continue
                frontier.append((t, nu, nv, lend or l == PAD, rend or r == PAD))
        return found


def accepts_pair(m: TwoTapeAutomaton, u: Sequence[int], v: Sequence[int]) -> bool:
    return m.accepts_pair(u, v)
