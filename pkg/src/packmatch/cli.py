"""Command-line front end: ``match``, ``bench`` and ``selftest``.

Exit status is 0 on success, 1 when a self-test finds a mismatch and 2 for
usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import engines
from .bitpack import PackedText, pack_text
from .core import Stats
from .difftest import run_suite
from .tabmulti import DEFAULT_BUDGET, BudgetError

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class InputError(Exception):
    pass


@dataclass(frozen=True)
class AlphabetMap:
    """Byte -> code map built from the pattern bytes.

    Pattern bytes get codes ``0..k-1`` in byte order.  Text bytes that occur
    in no pattern share ``other_code`` (``k``), which no occurrence can
    cover.  When the text has no such bytes the extra code is left out, so
    e.g. a DNA corpus packs at two bits per character.
    """

    codes: dict[int, int]
    sigma: int
    other_code: int | None

    @classmethod
    def build(cls, patterns: Sequence[bytes], text: bytes | None = None) -> AlphabetMap:
        used = sorted({b for p in patterns for b in p})
        codes = {b: i for i, b in enumerate(used)}
        needs_other = text is None or bool(set(text) - set(codes))
        other = len(used) if needs_other else None
        count = len(used) + (1 if needs_other else 0)
        sigma = 2
        while sigma < count:
            sigma *= 2
        return cls(codes, sigma, other)

    def table(self) -> np.ndarray:
        fill = self.other_code if self.other_code is not None else 0
        lut = np.full(256, fill, dtype=np.uint8)
        for b, c in self.codes.items():
            lut[b] = c
        return lut

    def encode_pattern(self, p: bytes) -> tuple[int, ...]:
        return tuple(self.codes[b] for b in p)

    def encode_text(self, text: bytes) -> np.ndarray:
        if self.other_code is None and set(text) - set(self.codes):
            raise ValueError("text has bytes outside the map and no spare code")
        return self.table()[np.frombuffer(text, dtype=np.uint8)]


def read_patterns(path: str) -> list[bytes]:
    """One pattern per line; the final newline is optional, empty lines are errors."""
    data = _read(path)
    lines = data.split(b"\n")
    if lines and lines[-1] == b"":
        lines.pop()
    if not lines:
        raise InputError(f"{path}: no patterns")
    for i, line in enumerate(lines, 1):
        if not line:
            raise InputError(f"{path}:{i}: empty pattern line")
    return lines


def _read(path: str) -> bytes:
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc


@dataclass
class Loaded:
    amap: AlphabetMap
    patterns: list[tuple[int, ...]]
    codes: np.ndarray
    text: PackedText


def load(patterns_path: str, text_path: str) -> Loaded:
    raw_patterns = read_patterns(patterns_path)
    raw_text = _read(text_path)
    amap = AlphabetMap.build(raw_patterns, raw_text)
    patterns = [amap.encode_pattern(p) for p in raw_patterns]
    codes = amap.encode_text(raw_text)
    return Loaded(amap, patterns, codes, pack_text(codes, amap.sigma))


def format_occurrences(occs, fmt: str) -> str:
    if fmt == "json":
        lines = (json.dumps({"pattern_id": o.pattern_id, "start": o.start, "end": o.end}) for o in occs)
    else:
        lines = (f"{o.pattern_id}\t{o.start}\t{o.end}" for o in occs)
    return "".join(line + "\n" for line in lines)


def cmd_match(args) -> int:
    data = load(args.patterns, args.text)
    amap, patterns, text = data.amap, data.patterns, data.text
    engine = args.engine or engines.default_engine(patterns)
    stats = Stats() if args.stats else None
    occs = engines.run(engine, patterns, text, amap.sigma, alpha=args.alpha, budget=args.budget, stats=stats)
    sys.stdout.write(format_occurrences(occs, args.format))
    if stats is not None:
        report = {"engine": engine, "chars": text.length, "sigma": amap.sigma, "occurrences": len(occs)}
        report.update(stats.as_dict())
        for key, value in report.items():
            print(f"{key}\t{value}", file=sys.stderr)
    return EXIT_OK


def cmd_bench(args) -> int:
    data = load(args.patterns, args.text)
    amap, patterns, text = data.amap, data.patterns, data.text
    symbols = data.codes.tolist()
    names = [e.strip() for e in args.engines.split(",") if e.strip()]
    for name in names:
        engines.check_engine(name, patterns)
    print("engine\tchars_per_sec\ttransitions\tstab_queries")
    for name in names:
        matcher = engines.build(name, patterns, amap.sigma, alpha=args.alpha, budget=args.budget)
        # symbol-level baselines get the unpacked text up front, outside the timer
        subject = symbols if name in ("naive", "kmp", "ac") else text
        best = float("inf")
        stats = Stats()
        for _ in range(args.repeat):
            stats = Stats()
            t0 = time.perf_counter()
            matcher.find_all(subject, stats)
            best = min(best, time.perf_counter() - t0)
        rate = text.length / best if best > 0 else float("inf")
        print(f"{name}\t{rate:.0f}\t{stats.transitions}\t{stats.stab_queries}")
        sys.stdout.flush()
    return EXIT_OK


def cmd_selftest(args) -> int:
    result = run_suite(args.seed, args.cases)
    for m in result.mismatches[:20]:
        print(f"MISMATCH {m}", file=sys.stderr)
    counts = " ".join(f"{e}={n}" for e, n in sorted(result.comparisons.items()))
    status = "ok" if result.ok else f"{len(result.mismatches)} mismatches"
    print(f"selftest: {result.cases} cases ({counts}): {status}")
    return EXIT_OK if result.ok else EXIT_MISMATCH


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="packmatch", description="Packed-text exact string matching.")
    sub = parser.add_subparsers(dest="command", required=True)

    match = sub.add_parser("match", help="report every pattern occurrence in a text")
    match.add_argument("--patterns", required=True, help="file with one pattern per line")
    match.add_argument("--text", required=True, help="text file, read as raw bytes")
    match.add_argument("--engine", choices=engines.ENGINES, default=None,
                       help="default: single for one pattern, acsim otherwise")
    match.add_argument("--alpha", type=_positive, default=None, help="block size of the tabulated engines")
    match.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET, help="table memory budget in bytes")
    match.add_argument("--format", choices=("tsv", "json"), default="tsv")
    match.add_argument("--stats", action="store_true", help="print operation counters to stderr")
    match.set_defaults(func=cmd_match)

    bench = sub.add_parser("bench", help="throughput and operation counts per engine")
    bench.add_argument("--patterns", required=True)
    bench.add_argument("--text", required=True)
    bench.add_argument("--engines", default="acsim,ac")
    bench.add_argument("--repeat", type=_positive, default=1)
    bench.add_argument("--alpha", type=_positive, default=None)
    bench.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET)
    bench.set_defaults(func=cmd_bench)

    selftest = sub.add_parser("selftest", help="differential test of every engine against the naive scan")
    selftest.add_argument("--seed", type=int, default=0)
    selftest.add_argument("--cases", type=int, default=200)
    selftest.set_defaults(func=cmd_selftest)
    return parser


def run_cli(argv: Sequence[str] | None = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (InputError, engines.EngineError, BudgetError, ValueError) as exc:
        print(f"packmatch: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
