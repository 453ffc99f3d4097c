"""Randomized and adversarial differential testing against the naive oracle."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterator

from . import engines
from .bitpack import pack_text
from .oracle import naive_find_all
from .tabmulti import table_entries

SIGMAS = (2, 4, 16, 256)
MAX_PATTERN = 64
MAX_TEXT = 10_000
MAX_PATTERNS = 16
TAB_ENTRY_CAP = 1 << 10  # keeps per-case table builds cheap


@dataclass
class Case:
    sigma: int
    patterns: list[tuple[int, ...]]
    text: list[int]
    label: str = "random"


@dataclass
class Mismatch:
    engine: str
    case: Case
    expected: int
    got: int

    def __str__(self) -> str:
        pats = [len(p) for p in self.case.patterns]
        return (f"{self.engine} on {self.case.label} case (sigma={self.case.sigma}, "
                f"pattern lengths={pats}, n={len(self.case.text)}): "
                f"{self.got} occurrences vs {self.expected} expected")


@dataclass
class SuiteResult:
    cases: int = 0
    comparisons: dict[str, int] = field(default_factory=dict)
    mismatches: list[Mismatch] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def _text(rng: random.Random, sigma: int, n: int) -> list[int]:
    style = rng.random()
    if style < 0.5:
        return [rng.randrange(sigma) for _ in range(n)]
    # a short repeated motif with sparse noise, so periodic patterns occur
    motif = [rng.randrange(sigma) for _ in range(rng.randint(1, 5))]
    noise = rng.choice((0.0, 0.01, 0.1))
    return [rng.randrange(sigma) if rng.random() < noise else motif[i % len(motif)] for i in range(n)]


def _length(rng: random.Random) -> int:
    return min(MAX_PATTERN, int(2 ** rng.uniform(0, 6.01)))


def random_case(rng: random.Random) -> Case:
    sigma = rng.choice(SIGMAS)
    d = 1 if rng.random() < 0.35 else min(MAX_PATTERNS, int(2 ** rng.uniform(1, 4.09)))
    # mostly short texts keep the suite fast; a few still reach MAX_TEXT
    n = int(10 ** rng.uniform(0, 3)) if rng.random() < 0.98 else int(10 ** rng.uniform(3, 4))
    n = MAX_TEXT if rng.random() < 0.003 else min(n, MAX_TEXT)
    text = _text(rng, sigma, n)
    patterns = []
    for _ in range(d):
        m = _length(rng)
        if n >= m and rng.random() < 0.6:
            s = rng.randrange(n - m + 1)
            patterns.append(tuple(text[s:s + m]))
        else:
            patterns.append(tuple(rng.randrange(sigma) for _ in range(m)))
    return Case(sigma, patterns, text)


def fibonacci_word(n: int) -> list[int]:
    a, b = [0], [0, 1]
    while len(b) < n:
        a, b = b, b + a
    return b[:n]


def adversarial_cases() -> Iterator[Case]:
    for k in (1, 2, 3, 5, 8, 13, 21, 31):
        p = tuple([0, 1] * k + [0])
        for K in (k, k + 1, 2 * k + 3, 50):
            yield Case(2, [p], [0, 1] * K, "(ab)^k a")
            yield Case(2, [p], [0, 1] * K + [0], "(ab)^k a")
            yield Case(4, [p], [0, 1] * K + [2] + [0, 1] * K + [0], "(ab)^k a")
    fib = fibonacci_word(3000)
    for m in (1, 2, 3, 5, 8, 13, 21, 34, 55):
        for s in (0, 1, 7):
            yield Case(2, [tuple(fib[s:s + m])], fib, "fibonacci")
        yield Case(2, [tuple(fib[s:s + m]) for s in range(0, 40, 5)], fib, "fibonacci")
    for m in (1, 2, 3, 4, 7, 16, 33, 64):
        for n in (0, m - 1, m, m + 1, 3 * m + 2, 500):
            yield Case(2, [(0,) * m], [0] * max(n, 0), "all-equal")
            yield Case(16, [(0,) * m, (0,) * (m + 1), (0,) * max(1, m // 2)], [0] * max(n, 0), "all-equal")
        yield Case(4, [(0,) * m], ([0] * (m + 2) + [3]) * 20, "all-equal")


def tab_alpha(sigma: int, patterns) -> int:
    alpha = 2
    while table_entries(sigma, alpha + 1) <= TAB_ENTRY_CAP:
        alpha += 1
    return alpha


def single_tab_alpha(sigma: int, m: int) -> int | None:
    """Smallest even alpha with ``m < alpha/2`` if its table is small enough."""
    alpha = 2 * m + 2
    return alpha if sigma**alpha <= TAB_ENTRY_CAP * 16 else None


def engine_plan(case: Case) -> list[tuple[str, int | None]]:
    plan = [("acsim", None), ("tabmulti", tab_alpha(case.sigma, case.patterns))]
    if len(case.patterns) == 1:
        plan.append(("single", None))
        alpha = single_tab_alpha(case.sigma, len(case.patterns[0]))
        if alpha is not None:
            plan.append(("singletab", alpha))
    return plan


def check_case(case: Case, result: SuiteResult) -> None:
    expected = naive_find_all(case.patterns, case.text)
    text = pack_text(case.text, case.sigma)
    for engine, alpha in engine_plan(case):
        got = engines.run(engine, case.patterns, text, case.sigma, alpha=alpha)
        result.comparisons[engine] = result.comparisons.get(engine, 0) + 1
        if got != expected:
            result.mismatches.append(Mismatch(engine, case, len(expected), len(got)))
    result.cases += 1


def run_suite(seed: int = 0, cases: int = 1000, *, adversarial: bool = True) -> SuiteResult:
    """``cases`` random cases plus (optionally) the fixed adversarial families."""
    rng = random.Random(seed)
    result = SuiteResult()
    for _ in range(cases):
        check_case(random_case(rng), result)
    if adversarial:
        for case in adversarial_cases():
            check_case(case, result)
    return result
