"""Alphabets with an involution, words over them, and short-lex order.

A word is a plain tuple of letter indices. Letter order is index order, so
short-lex comparison never needs the alphabet.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Sequence

Word = tuple[int, ...]

EMPTY: Word = ()

# printed form of the empty word; never a valid generator name
IDENTITY_TOKEN = "1"

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class WordSyntaxError(ValueError):
    pass


@dataclass(frozen=True)
class Alphabet:
    """Finite ordered alphabet with a self-inverse pairing on letters.

    ``names[i]`` is the printed name of letter ``i`` and ``inverse[i]`` the
    index of its formal inverse. ``juxtapose`` selects the surface syntax:
    letters written next to each other (single-character names only) or
    separated by whitespace.
    """

    names: tuple[str, ...]
    inverse: tuple[int, ...]
    juxtapose: bool = False
    _index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        n = len(self.names)
        if len(self.inverse) != n:
            raise ValueError("inverse table length does not match letter count")
        if len(set(self.names)) != n:
            raise ValueError(f"letter names are not distinct: {self.names}")
        for i, j in enumerate(self.inverse):
            if not 0 <= j < n or self.inverse[j] != i:
                raise ValueError(f"inverse is not an involution at letter {self.names[i]!r}")
        for name in self.names:
            if not _NAME_RE.match(name):
                raise ValueError(f"invalid letter name {name!r}")
            if self.juxtapose and len(name) != 1:
                raise ValueError(
                    f"juxtaposed words need single-character names, got {name!r}"
                )
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(self.names)})

    @classmethod
    def from_generators(
        cls,
        generators: Sequence[str],
        inverses: Sequence[str] | None = None,
        juxtapose: bool = False,
    ) -> "Alphabet":
        """Alphabet ordered g1, g1^-1, g2, g2^-1, ...

        Without explicit inverse names each generator's inverse is named by
        swapping its case (``a`` -> ``A``).
        """
        if inverses is None:
            inverses = [g.swapcase() for g in generators]
        if len(inverses) != len(generators):
            raise ValueError("every generator needs exactly one inverse name")
        names: list[str] = []
        inverse: list[int] = []
        for g, h in zip(generators, inverses):
            if g == h:
                # involutory generator: a single self-inverse letter
                names.append(g)
                inverse.append(len(names) - 1)
                continue
            names += [g, h]
            inverse += [len(names) - 1, len(names) - 2]
        return cls(tuple(names), tuple(inverse), juxtapose)

    def __len__(self) -> int:
        return len(self.names)

    def letter(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise WordSyntaxError(f"unknown letter {name!r}") from None

    def parse(self, text: str) -> Word:
        """Parse a word. ``1`` (or blank text) is the empty word and a
        trailing ``^-1`` inverts a letter."""
        text = text.replace("\u207b\u00b9", "^-1").strip()
        if text in ("", IDENTITY_TOKEN):
            return EMPTY
        if self.juxtapose:
            tokens = re.findall(r"\S(?:\^-1)?", re.sub(r"\s+", "", text))
        else:
            tokens = text.split()
        out: list[int] = []
        for tok in tokens:
            if tok == IDENTITY_TOKEN:
                continue
            if tok.endswith("^-1"):
                out.append(self.inverse[self.letter(tok[:-3])])
            else:
                out.append(self.letter(tok))
        return tuple(out)

    def format(self, w: Sequence[int]) -> str:
        if not w:
            return IDENTITY_TOKEN
        sep = "" if self.juxtapose else " "
        return sep.join(self.names[x] for x in w)

    def invert(self, w: Sequence[int]) -> Word:
        return invert_word(w, self)


def invert_word(w: Sequence[int], alphabet: Alphabet) -> Word:
    inv = alphabet.inverse
    return tuple(inv[x] for x in reversed(w))


def shortlex_compare(u: Sequence[int], v: Sequence[int]) -> int:
    """-1, 0 or 1 as ``u`` is less than, equal to or greater than ``v``."""
    if len(u) != len(v):
        return -1 if len(u) < len(v) else 1
    for x, y in zip(u, v):
        if x != y:
            return -1 if x < y else 1
    return 0


def shortlex_key(w: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    return len(w), tuple(w)


def shortlex_successor(u: Sequence[int], size: int) -> Word:
    """Immediate short-lex successor of ``u`` over letters ``0..size-1``."""
    if size < 1:
        raise ValueError("alphabet is empty")
    w = list(u)
    i = len(w) - 1
    while i >= 0 and w[i] == size - 1:
        w[i] = 0
        i -= 1
    if i < 0:
        return (0,) * (len(w) + 1)
    w[i] += 1
    return tuple(w)


def shortlex_words(size: int, max_len: int) -> Iterator[Word]:
    """All words of length <= max_len in short-lex order."""
    w: Word = EMPTY
    while len(w) <= max_len:
        yield w
        w = shortlex_successor(w, size)
