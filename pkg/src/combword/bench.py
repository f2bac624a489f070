"""Space and time profiles of the solvers over a grid of word lengths.

Each length is measured on a deterministic sample of uniformly random
words and random normal forms (random walks in the acceptor); the profile
records the worst case over the sample.
"""

from __future__ import annotations

import random
import statistics
from typing import Sequence

from .fsa import Fsa
from .structure import Combing
from .words import Word
from .wordproblem import SearchStats, SpaceMeter, solve_enumerative, solve_fast

DEFAULT_LENGTHS = (4, 8, 16, 32, 64)


def random_word(size: int, n: int, rng: random.Random) -> Word:
    return tuple(rng.randrange(size) for _ in range(n))


def random_normal_form(acceptor: Fsa, n: int, rng: random.Random, tries: int = 100) -> Word | None:
    """A random accepted word of length exactly ``n``, or None."""
    live = acceptor.coaccessible()
    for _ in range(tries):
        state = acceptor.initial
        w: list[int] = []
        for _ in range(n):
            moves = [
                (a, t) for a in range(acceptor.size)
                if (t := acceptor.transitions.get((state, a))) is not None and t in live
            ]
            if not moves:
                break
            a, state = rng.choice(moves)
            w.append(a)
        if len(w) == n and state in acceptor.accepting:
            return tuple(w)
    return None


def workload(c: Combing, n: int, samples: int, rng: random.Random) -> list[Word]:
    words = []
    for i in range(samples):
        w = random_normal_form(c.acceptor, n, rng) if i % 2 else None
        words.append(w if w is not None else random_word(len(c.alphabet), n, rng))
    return words


def space_profile(c: Combing, lengths: Sequence[int] = DEFAULT_LENGTHS,
                  samples: int = 20, seed: int = 0) -> list[tuple[int, int]]:
    rng = random.Random(seed)
    rows = []
    for n in lengths:
        peak = 0
        for w in workload(c, n, samples, rng):
            meter = SpaceMeter()
            solve_enumerative(c, w, meter)
            peak = max(peak, meter.peak_cells)
        rows.append((n, peak))
    return rows


def time_profile(c: Combing, lengths: Sequence[int] = DEFAULT_LENGTHS,
                 samples: int = 20, seed: int = 0) -> list[tuple[int, int]]:
    rng = random.Random(seed)
    rows = []
    for n in lengths:
        worst = 0
        for w in workload(c, n, samples, rng):
            stats = SearchStats()
            solve_fast(c, w, stats)
            worst = max(worst, stats.expansions)
        rows.append((n, worst))
    return rows


def linear_fit(rows: Sequence[tuple[int, int]]) -> tuple[float, float, float]:
    """Least-squares ``y = C n + D``; returns (C, D, max |residual|)."""
    xs = [n for n, _ in rows]
    ys = [y for _, y in rows]
    slope, intercept = statistics.linear_regression(xs, ys)
    resid = max(abs(y - (slope * x + intercept)) for x, y in rows)
    return slope, intercept, resid
