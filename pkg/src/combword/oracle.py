"""Brute-force group evaluators used as ground truth.

Nothing in :mod:`combword.wordproblem` imports this module; the solvers only
see acceptors and multipliers.

All oracles use the standard letter layout: generator ``i`` is letter ``2i``
and its inverse is letter ``2i + 1``. A direct product lays out the letters
of its factors one block after another.
"""

from __future__ import annotations

from typing import Hashable, Sequence

from .words import Word

Element = Hashable


def free_reduce(w: Sequence[int], inverse: Sequence[int] | None = None) -> Word:
    """Delete adjacent cancelling pairs with one left-to-right stack sweep."""
    stack: list[int] = []
    for x in w:
        inv = x ^ 1 if inverse is None else inverse[x]
        if stack and stack[-1] == inv:
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


def abelian_eval(w: Sequence[int], rank: int) -> tuple[int, ...]:
    vec = [0] * rank
    for x in w:
        if not 0 <= x < 2 * rank:
            raise ValueError(f"letter {x} outside Z^{rank}")
        vec[x >> 1] += -1 if x & 1 else 1
    return tuple(vec)


class GroupOracle:
    """Canonical evaluation in a concrete group."""

    kind = "abstract"

    @property
    def num_letters(self) -> int:
        raise NotImplementedError

    @property
    def identity(self) -> Element:
        raise NotImplementedError

    def letter_value(self, x: int) -> Element:
        raise NotImplementedError

    def multiply(self, g: Element, h: Element) -> Element:
        raise NotImplementedError

    def inverse(self, g: Element) -> Element:
        raise NotImplementedError

    def length(self, g: Element) -> int:
        """Word-metric distance from the identity."""
        raise NotImplementedError

    def evaluate(self, w: Sequence[int]) -> Element:
        g = self.identity
        for x in w:
            g = self.multiply(g, self.letter_value(x))
        return g

    def is_identity(self, g: Element) -> bool:
        return g == self.identity

    def describe(self) -> dict:
        raise NotImplementedError


class FreeOracle(GroupOracle):
    kind = "free"

    def __init__(self, rank: int):
        if rank < 1:
            raise ValueError("free group rank must be positive")
        self.rank = rank

    def __repr__(self) -> str:
        return f"FreeOracle({self.rank})"

    @property
    def num_letters(self) -> int:
        return 2 * self.rank

    @property
    def identity(self) -> Word:
        return ()

    def letter_value(self, x: int) -> Word:
        if not 0 <= x < 2 * self.rank:
            raise ValueError(f"letter {x} outside F_{self.rank}")
        return (x,)

    def multiply(self, g: Word, h: Word) -> Word:
        # both inputs are reduced; cancel only across the seam
        i = 0
        while i < len(g) and i < len(h) and g[-1 - i] == h[i] ^ 1:
            i += 1
        return g[: len(g) - i] + h[i:]

    def inverse(self, g: Word) -> Word:
        return tuple(x ^ 1 for x in reversed(g))

    def length(self, g: Word) -> int:
        return len(g)

    def evaluate(self, w: Sequence[int]) -> Word:
        for x in w:
            self.letter_value(x)
        return free_reduce(w)

    def describe(self) -> dict:
        return {"kind": "free", "rank": self.rank}


class AbelianOracle(GroupOracle):
    kind = "abelian"

    def __init__(self, rank: int):
        if rank < 1:
            raise ValueError("abelian rank must be positive")
        self.rank = rank

    def __repr__(self) -> str:
        return f"AbelianOracle({self.rank})"

    @property
    def num_letters(self) -> int:
        return 2 * self.rank

    @property
    def identity(self) -> tuple[int, ...]:
        return (0,) * self.rank

    def letter_value(self, x: int) -> tuple[int, ...]:
        return abelian_eval((x,), self.rank)

    def multiply(self, g, h):
        return tuple(a + b for a, b in zip(g, h))

    def inverse(self, g):
        return tuple(-a for a in g)

    def length(self, g) -> int:
        return sum(abs(a) for a in g)

    def evaluate(self, w: Sequence[int]) -> tuple[int, ...]:
        return abelian_eval(w, self.rank)

    def describe(self) -> dict:
        return {"kind": "abelian", "rank": self.rank}


class ProductOracle(GroupOracle):
    """Direct product; elements are tuples of factor elements."""

    kind = "product"

    def __init__(self, factors: Sequence[GroupOracle]):
        if not factors:
            raise ValueError("a direct product needs at least one factor")
        self.factors = tuple(factors)
        self._owner: list[tuple[int, int]] = []
        for k, f in enumerate(self.factors):
            self._owner += [(k, x) for x in range(f.num_letters)]

    def __repr__(self) -> str:
        return f"ProductOracle({list(self.factors)!r})"

    @property
    def num_letters(self) -> int:
        return len(self._owner)

    @property
    def identity(self) -> tuple:
        return tuple(f.identity for f in self.factors)

    def owner(self, x: int) -> tuple[int, int]:
        """(factor index, local letter) of product letter ``x``."""
        if not 0 <= x < len(self._owner):
            raise ValueError(f"letter {x} belongs to no factor")
        return self._owner[x]

    def letter_value(self, x: int) -> tuple:
        k, local = self.owner(x)
        return tuple(
            f.letter_value(local) if i == k else f.identity
            for i, f in enumerate(self.factors)
        )

    def multiply(self, g, h):
        return tuple(f.multiply(a, b) for f, a, b in zip(self.factors, g, h))

    def inverse(self, g):
        return tuple(f.inverse(a) for f, a in zip(self.factors, g))

    def length(self, g) -> int:
        return sum(f.length(a) for f, a in zip(self.factors, g))

    def evaluate(self, w: Sequence[int]) -> tuple:
        return product_eval(w, self.factors)

    def describe(self) -> dict:
        return {"kind": "product", "factors": [f.describe() for f in self.factors]}


def product_eval(w: Sequence[int], factors: Sequence[GroupOracle]) -> tuple:
    """Evaluate each factor on the subsequence of its own letters."""
    parts: list[list[int]] = [[] for _ in factors]
    offsets = []
    total = 0
    for f in factors:
        offsets.append(total)
        total += f.num_letters
    for x in w:
        for k in range(len(factors) - 1, -1, -1):
            if offsets[k] <= x:
                break
        if not 0 <= x < total:
            raise ValueError(f"letter {x} belongs to no factor")
        parts[k].append(x - offsets[k])
    return tuple(f.evaluate(p) for f, p in zip(factors, parts))


def geodesic_length(o: GroupOracle, w: Sequence[int]) -> int:
    return o.length(o.evaluate(w))


def oracle_from_description(desc: dict) -> GroupOracle:
    kind = desc.get("kind")
    if kind == "free":
        return FreeOracle(int(desc["rank"]))
    if kind == "abelian":
        return AbelianOracle(int(desc["rank"]))
    if kind == "product":
        return ProductOracle([oracle_from_description(d) for d in desc["factors"]])
    raise ValueError(f"unknown oracle kind {kind!r}")
