"""The combing data type: acceptor, multipliers and constants."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .fsa import Fsa, TwoTapeAutomaton
from .words import Alphabet, Word


class StructureInvariantError(ValueError):
    """A combing violates one of its construction invariants."""


@dataclass(frozen=True, eq=False)
class Combing:
    """Normal-form language plus one multiplier automaton per letter.

    ``lam``/``epsilon`` are the shortness constants, ``departure[n - 1]``
    is D(n), and ``identity_words`` is the finite set of accepted words of
    length at most ``epsilon`` that represent the identity.
    """

    alphabet: Alphabet
    acceptor: Fsa
    multipliers: Mapping[int, TwoTapeAutomaton]
    lam: Fraction
    epsilon: Fraction
    departure: tuple[int, ...]
    fellow_traveler_k: int
    uniqueness: bool
    identity_words: frozenset[Word]
    name: str = "combing"
    equality: TwoTapeAutomaton | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "lam", Fraction(self.lam))
        object.__setattr__(self, "epsilon", Fraction(self.epsilon))
        object.__setattr__(self, "departure", tuple(self.departure))
        object.__setattr__(self, "identity_words", frozenset(self.identity_words))
        object.__setattr__(self, "multipliers", dict(self.multipliers))
        self.check()

    def check(self) -> None:
        n = len(self.alphabet)
        if self.acceptor.size != n:
            raise StructureInvariantError("acceptor alphabet does not match the combing alphabet")
        if set(self.multipliers) != set(range(n)):
            raise StructureInvariantError("need exactly one multiplier per letter")
        for m in self.multipliers.values():
            if m.size != n:
                raise StructureInvariantError("multiplier alphabet does not match the combing alphabet")
        if self.lam < 0 or self.epsilon < 0:
            raise StructureInvariantError("lambda and epsilon must be nonnegative")
        if self.fellow_traveler_k < 1:
            raise StructureInvariantError("fellow traveler constant must be positive")
        if any(d < 1 for d in self.departure):
            raise StructureInvariantError("departure table entries must be positive")
        if any(a > b for a, b in zip(self.departure, self.departure[1:])):
            raise StructureInvariantError("departure table is not nondecreasing")
        if self.acceptor.is_empty():
            raise StructureInvariantError("acceptor language is empty")
        for w in self.identity_words:
            if len(w) > self.epsilon:
                raise StructureInvariantError(f"identity word {w} is longer than epsilon")
            if not self.acceptor.accepts(w):
                raise StructureInvariantError(f"identity word {w} is not accepted")
        if not self.identity_words:
            raise StructureInvariantError("identity set is empty")
        if self.uniqueness and len(self.identity_words) != 1:
            raise StructureInvariantError("a structure with uniqueness has exactly one identity word")

    def length_bound(self, n: int) -> int:
        """Largest length allowed by shortness for an element at distance n."""
        return math.floor(self.lam * n + self.epsilon)

    def departure_at(self, n: int) -> int:
        if not 1 <= n <= len(self.departure):
            raise IndexError(f"departure table does not cover n={n}")
        return self.departure[n - 1]
