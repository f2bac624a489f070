"""Command-line front end.

Exit status: 0 ran to completion (whatever the verdicts), 1 usage error,
2 invalid structure, 3 solver exhaustion on some input word.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from .bench import DEFAULT_LENGTHS, linear_fit, space_profile, time_profile
from .combing import validate_all
from .structfile import Structure, StructureFileError, load_structure
from .words import Word, WordSyntaxError
from .wordproblem import (
    SpaceMeter,
    WordProblemError,
    normal_form,
    solve_enumerative,
    solve_fast,
    solve_subgroup,
    substitute,
)

EXIT_OK, EXIT_USAGE, EXIT_STRUCTURE, EXIT_EXHAUSTED = 0, 1, 2, 3

VERBS = ("solve", "solve-fast", "normal-form", "validate", "bench-space", "bench-time")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="combword", description="Decide the word problem from a combing.")
    p.add_argument("verb", choices=VERBS)
    p.add_argument("structure", help="structure file path or shipped name (e.g. f2.struct)")
    p.add_argument("word", nargs="?", help="input word; '1' or '' is the empty word")
    p.add_argument("--words", type=Path, help="file with one word per line")
    p.add_argument("--max-len", type=int, default=4, help="validation bound (default 4)")
    p.add_argument("--meter", action="store_true", help="report peak work-tape cells")
    p.add_argument("--embedding", help="read words over the named subgroup's generators")
    p.add_argument("--lengths", type=int, nargs="+", default=list(DEFAULT_LENGTHS))
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    return p


def _inputs(args) -> list[str]:
    if args.words is not None:
        if args.word is not None:
            raise UsageError("give either a word or --words, not both")
        try:
            return args.words.read_text().splitlines()
        except OSError as exc:
            raise UsageError(str(exc)) from exc
    if args.word is None:
        raise UsageError(f"{args.verb} needs a word or --words")
    return [args.word]


def _parse_words(st: Structure, args, lines: list[str]) -> list[Word]:
    alphabet = st.combing.alphabet
    if args.embedding:
        if args.embedding not in st.embeddings:
            raise UsageError(f"{st.name} has no embedding {args.embedding!r}")
        alphabet = st.embeddings[args.embedding].sub_alphabet
    try:
        return [alphabet.parse(line) for line in lines]
    except WordSyntaxError as exc:
        raise UsageError(str(exc)) from exc


def _solve(st: Structure, args, out) -> int:
    lines = _inputs(args)
    words = _parse_words(st, args, lines)
    batch = args.words is not None
    c = st.combing
    emb = st.embeddings.get(args.embedding) if args.embedding else None
    status = EXIT_OK
    for text, w in zip(lines, words):
        meter = SpaceMeter()
        try:
            if args.verb == "solve-fast":
                if emb is not None:
                    w = substitute(w, emb)
                ok = solve_fast(c, w)
            elif emb is not None:
                ok = solve_subgroup(c, emb, w, meter)
            else:
                ok = solve_enumerative(c, w, meter)
        except WordProblemError as exc:
            status = EXIT_EXHAUSTED
            print(f"{text.strip()}\tERROR: {exc}" if batch else f"ERROR: {exc}", file=out)
            continue
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        verdict = "TRIVIAL" if ok else "NONTRIVIAL"
        if args.meter and args.verb == "solve":
            verdict += f"\tpeak_cells={meter.peak_cells}"
        print(f"{text.strip()}\t{verdict}" if batch else verdict, file=out)
    return status


def _normal_form(st: Structure, args, out) -> int:
    lines = _inputs(args)
    words = _parse_words(st, args, lines)
    emb = st.embeddings.get(args.embedding) if args.embedding else None
    status = EXIT_OK
    for text, w in zip(lines, words):
        if emb is not None:
            w = substitute(w, emb)
        try:
            v = normal_form(st.combing, w)
        except WordProblemError as exc:
            status = EXIT_EXHAUSTED
            print(f"ERROR: {exc}", file=out)
            continue
        nf = st.combing.alphabet.format(v)
        print(f"{text.strip()}\t{nf}" if args.words is not None else nf, file=out)
    return status


def _validate(st: Structure, args, out) -> int:
    if st.oracle is None:
        raise UsageError(f"{st.name} declares no oracle; nothing to validate against")
    results = validate_all(st.combing, st.oracle, args.max_len)
    for name, ok in results.items():
        print(f"{name}\t{'PASS' if ok else 'FAIL'}", file=out)
    return EXIT_OK


def _bench(st: Structure, args, out) -> int:
    if args.verb == "bench-space":
        rows = space_profile(st.combing, args.lengths, args.samples, args.seed)
        print("length\tpeak_cells", file=out)
    else:
        rows = time_profile(st.combing, args.lengths, args.samples, args.seed)
        print("length\texpansions", file=out)
    for n, y in rows:
        print(f"{n}\t{y}", file=out)
    if args.verb == "bench-space" and len(rows) >= 2:
        slope, intercept, resid = linear_fit(rows)
        print(f"# fit: peak = {slope:.4f}*n + {intercept:.4f}, max residual {resid:.4f}", file=out)
    return EXIT_OK


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    args = build_parser().parse_args(argv)
    try:
        st = load_structure(args.structure)
    except (StructureFileError, FileNotFoundError) as exc:
        print(f"combword: {exc}", file=sys.stderr)
        return EXIT_STRUCTURE
    try:
        if args.verb in ("solve", "solve-fast"):
            return _solve(st, args, out)
        if args.verb == "normal-form":
            return _normal_form(st, args, out)
        if args.verb == "validate":
            return _validate(st, args, out)
        return _bench(st, args, out)
    except UsageError as exc:
        print(f"combword: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except WordProblemError as exc:
        print(f"combword: {exc}", file=sys.stderr)
        return EXIT_EXHAUSTED


def main() -> None:
    sys.exit(run())
