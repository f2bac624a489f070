"""Word-problem solvers driven by a combing.

The solver walks the input one letter at a time, replacing the normal form
of each prefix by the normal form of the next prefix. Only the acceptor and
the multipliers are consulted; there is no group oracle here.

``solve_enumerative`` searches candidates in short-lex order under a
linear-space budget tracked by :class:`SpaceMeter`. ``solve_fast`` needs a
structure with uniqueness and synthesizes the next normal form by a layered
search over multiplier configurations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .fsa import PAD
from .structure import Combing
from .words import EMPTY, Alphabet, Word, invert_word

# acceptor state, multiplier state, letter being multiplied, loop position
RUN_STATE_CELLS = 4

END = -1


class WordProblemError(RuntimeError):
    """Base class for failures that signal a broken structure, never a
    nontrivial element."""


class ExhaustionError(WordProblemError):
    pass


class NoSolutionError(WordProblemError):
    pass


class AmbiguityError(WordProblemError):
    pass


class BoundViolation(WordProblemError):
    """An in-run length bound failed; the combing is not short."""


@dataclass
class SpaceMeter:
    """Work-tape cell accounting; each named region holds some cells."""

    current_cells: int = 0
    peak_cells: int = 0
    regions: dict[str, int] = field(default_factory=dict)

    def hold(self, region: str, cells: int) -> None:
        self.current_cells += cells - self.regions.get(region, 0)
        self.regions[region] = cells
        if self.current_cells > self.peak_cells:
            self.peak_cells = self.current_cells

    def release(self, region: str) -> None:
        self.current_cells -= self.regions.pop(region, 0)


@dataclass
class SearchStats:
    candidates_tested: int = 0
    expansions: int = 0


@dataclass(frozen=True)
class SubgroupEmbedding:
    """Generators of a subgroup, given as words over the ambient alphabet.

    ``generator_words[b]`` is the image of sub-alphabet letter ``b``.
    """

    sub_alphabet: Alphabet
    ambient: Alphabet
    generator_words: tuple[Word, ...]
    name: str = "subgroup"

    def __post_init__(self) -> None:
        if len(self.generator_words) != len(self.sub_alphabet):
            raise ValueError("need one generator word per subgroup letter")
        for b, w in enumerate(self.generator_words):
            if not w:
                raise ValueError(f"generator {self.sub_alphabet.names[b]!r} has an empty image")
            if any(not 0 <= x < len(self.ambient) for x in w):
                raise ValueError(f"generator {self.sub_alphabet.names[b]!r} uses unknown letters")
            if self.generator_words[self.sub_alphabet.inverse[b]] != invert_word(w, self.ambient):
                raise ValueError(
                    f"image of {self.sub_alphabet.names[b]!r} and its inverse are not mutually inverse"
                )

    @classmethod
    def from_generators(
        cls,
        sub_alphabet: Alphabet,
        ambient: Alphabet,
        images: dict[int, Word],
        name: str = "subgroup",
    ) -> "SubgroupEmbedding":
        """Fill in inverse letters from the images of the generators."""
        words: list[Word | None] = [None] * len(sub_alphabet)
        for b, w in images.items():
            words[b] = tuple(w)
            words[sub_alphabet.inverse[b]] = invert_word(w, ambient)
        if any(w is None for w in words):
            raise ValueError("some subgroup letters have no image")
        return cls(sub_alphabet, ambient, tuple(words), name)  # type: ignore[arg-type]

    @property
    def blowup(self) -> int:
        return max(len(w) for w in self.generator_words)


def substitute(w_prime: Sequence[int], emb: SubgroupEmbedding) -> Word:
    out: list[int] = []
    for b in w_prime:
        out.extend(emb.generator_words[b])
    return tuple(out)


def linear_space_constants(c: Combing) -> tuple[Fraction, Fraction]:
    """(C, D) with peak cells <= C * len(w) + D for ``solve_enumerative``.

    Prefix normal forms are at most lam*n + eps long and a candidate at most
    lam*(that + 1) + eps.
    """
    lam, eps = c.lam, c.epsilon
    return lam + lam * lam, lam * eps + lam + 2 * eps + RUN_STATE_CELLS


def _check_word(c: Combing, w: Sequence[int]) -> None:
    n = len(c.alphabet)
    for x in w:
        if not 0 <= x < n:
            raise ValueError(f"letter {x} is not in the alphabet of {c.name}")


def next_normal_form_enumerative(
    c: Combing,
    u: Sequence[int],
    x: int,
    meter: SpaceMeter | None = None,
    stats: SearchStats | None = None,
) -> Word:
    """Short-lex least accepted ``v`` with ``(u, v)`` accepted by the
    multiplier for ``x``.

    Candidates are visited in short-lex order up to the shortness bound for
    ``len(u) + 1``. A candidate whose run dies at position ``i`` also
    condemns every same-length candidate sharing its first ``i + 1``
    letters, so the odometer skips straight past them. Lengths outside
    ``len(u) +- max_lag`` are rejected without running.
    """
    meter = meter if meter is not None else SpaceMeter()
    u = tuple(u)
    acc = c.acceptor
    m = c.multipliers[x]
    size = len(c.alphabet)
    bound = c.length_bound(len(u) + 1)
    lo = max(0, len(u) - m.max_lag)
    hi = min(bound, len(u) + m.max_lag)
    trans_a = acc.transitions
    trans_m = m.transitions
    for k in range(lo, hi + 1):
        if k > bound:
            raise BoundViolation(f"candidate length {k} exceeds search bound {bound}")
        # one cell per candidate letter; each cell also carries the run
        # states after that letter, so backtracking needs no recomputation
        meter.hold("candidate", k)
        cand = [0] * k
        acc_states: list[int] = [acc.initial]
        mult_states: list[int] = [m.initial]
        i = 0
        while True:
            while i < k:
                left = u[i] if i < len(u) else PAD
                sa = trans_a.get((acc_states[i], cand[i]))
                sm = trans_m.get((mult_states[i], (left, cand[i])))
                if sa is None or sm is None:
                    break
                acc_states.append(sa)
                mult_states.append(sm)
                i += 1
            if stats is not None:
                stats.candidates_tested += 1
            if i == k:
                s: int | None = mult_states[k]
                for t in range(k, len(u)):
                    s = trans_m.get((s, (u[t], PAD)))
                    if s is None:
                        break
                if s in m.accepting and acc_states[k] in acc.accepting:
                    meter.release("candidate")
                    return tuple(cand)
                j = k - 1
            else:
                j = i
            while j >= 0 and cand[j] == size - 1:
                cand[j] = 0
                j -= 1
            if j < 0:
                break
            cand[j] += 1
            for t in range(j + 1, k):
                cand[t] = 0
            i = j
            del acc_states[j + 1:]
            del mult_states[j + 1:]
    meter.release("candidate")
    raise ExhaustionError(
        f"no normal form for {list(u)}*{x} within length {bound}; "
        f"{c.name} is not a valid combing"
    )


def solve_enumerative(
    c: Combing,
    w: Sequence[int],
    meter: SpaceMeter | None = None,
    stats: SearchStats | None = None,
) -> bool:
    """True iff ``w`` represents the identity."""
    if not w:
        return True
    _check_word(c, w)
    meter = meter if meter is not None else SpaceMeter()
    meter.hold("run_state", RUN_STATE_CELLS)
    limit = c.length_bound(len(w))
    u: Word = EMPTY
    meter.hold("u", 0)
    for x in w:
        u = next_normal_form_enumerative(c, u, x, meter, stats)
        meter.hold("u", len(u))
        if len(u) > limit:
            raise BoundViolation(f"prefix normal form of length {len(u)} exceeds {limit}")
    return u in c.identity_words


def normal_form(c: Combing, w: Sequence[int], fast: bool = False) -> Word:
    """Normal form of the element represented by ``w``."""
    _check_word(c, w)
    if not w:
        return min(c.identity_words, key=lambda v: (len(v), v))
    u: Word = EMPTY
    for x in w:
        u = next_normal_form_fast(c, u, x) if fast else next_normal_form_enumerative(c, u, x)
    return u


def next_normal_form_fast(
    c: Combing,
    u: Sequence[int],
    x: int,
    stats: SearchStats | None = None,
) -> Word:
    """The unique accepted ``v`` with ``(u, v)`` accepted by the multiplier
    for ``x``.

    Reads ``u`` on the first tape and synthesizes ``v`` layer by layer.
    A configuration is (multiplier state, acceptor state of v or END);
    each layer holds at most one entry per configuration, with a saturating
    count of the distinct ``v`` prefixes reaching it.
    """
    if not c.uniqueness:
        raise ValueError(f"{c.name} has no uniqueness; use the enumerative solver")
    u = tuple(u)
    acc = c.acceptor
    m = c.multipliers[x]
    size = len(c.alphabet)
    trans_a = acc.transitions
    trans_m = m.transitions
    last = min(len(u) + m.max_lag, c.length_bound(len(u) + 1))
    # layers[t][config] = (path count, parent config, right symbol)
    layers: list[dict] = [{(m.initial, acc.initial): (1, None, None)}]
    solutions: list[tuple[int, tuple[int, int]]] = []
    total = 0
    for t in range(last + 1):
        layer = layers[t]
        if t >= len(u):
            for cfg, (count, _, _) in layer.items():
                s, a = cfg
                if s in m.accepting and (a == END or a in acc.accepting):
                    solutions.append((t, cfg))
                    total += count
        if t == last or not layer:
            break
        left = u[t] if t < len(u) else PAD
        nxt: dict = {}
        for cfg, (count, _, _) in layer.items():
            if stats is not None:
                stats.expansions += 1
            s, a = cfg
            if a == END:
                moves = [(PAD, END)] if left != PAD else []
            else:
                moves = []
                # v may stop here only within the lag allowance
                if left != PAD and a in acc.accepting and len(u) - t <= m.max_lag:
                    moves.append((PAD, END))
                for r in range(size):
                    na = trans_a.get((a, r))
                    if na is not None:
                        moves.append((r, na))
            for r, na in moves:
                ns = trans_m.get((s, (left, r)))
                if ns is None:
                    continue
                key = (ns, na)
                prev = nxt.get(key)
                if prev is None:
                    nxt[key] = (min(count, 2), cfg, r)
                else:
                    nxt[key] = (min(prev[0] + count, 2), prev[1], prev[2])
        layers.append(nxt)
    if total == 0:
        raise NoSolutionError(f"no normal form for {list(u)}*{x}; {c.name} is not a valid combing")
    if total > 1:
        raise AmbiguityError(f"several normal forms for {list(u)}*{x}; uniqueness fails in {c.name}")
    t, cfg = solutions[0]
    v: list[int] = []
    while t > 0:
        _, parent, r = layers[t][cfg]
        if r != PAD:
            v.append(r)
        cfg = parent
        t -= 1
    return tuple(reversed(v))


def solve_fast(c: Combing, w: Sequence[int], stats: SearchStats | None = None) -> bool:
    if not w:
        return True
    _check_word(c, w)
    u: Word = EMPTY
    for x in w:
        u = next_normal_form_fast(c, u, x, stats)
    return u in c.identity_words


def solve_subgroup(
    c: Combing,
    emb: SubgroupEmbedding,
    w_prime: Sequence[int],
    meter: SpaceMeter | None = None,
    stats: SearchStats | None = None,
) -> bool:
    for b in w_prime:
        if not 0 <= b < len(emb.sub_alphabet):
            raise ValueError(f"letter {b} is not in the alphabet of {emb.name}")
    return solve_enumerative(c, substitute(w_prime, emb), meter, stats)
