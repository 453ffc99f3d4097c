"""Name-based access to every matcher, with shared parameter defaults."""

from __future__ import annotations

from typing import Sequence

from .acsim import MultiMatcher, as_packed
from .core import Occurrence, Stats, sort_occurrences
from .oracle import AcAutomaton, kmp_find_all, naive_find_all
from .single import SingleMatcher, TabSingleMatcher
from .tabmulti import DEFAULT_BUDGET, TabMultiMatcher, alpha_for_budget, table_entries

ENGINES = ("acsim", "tabmulti", "single", "singletab", "naive", "kmp", "ac")
SINGLE_ONLY = frozenset({"single", "singletab", "kmp"})

# tables are filled by a Python loop, so defaults also cap the entry count
BUILD_ENTRY_CAP = 1 << 16


class EngineError(ValueError):
    """Engine and inputs do not fit together (a usage error)."""


def default_tab_alpha(sigma: int, budget: int = DEFAULT_BUDGET) -> int:
    alpha = alpha_for_budget(budget, sigma)
    while alpha > 2 and table_entries(sigma, alpha) > BUILD_ENTRY_CAP:
        alpha -= 1
    return alpha


def default_single_alpha(sigma: int, budget: int = DEFAULT_BUDGET) -> int:
    """Largest even alpha whose ``sigma**alpha`` table fits both caps (at least 2)."""
    alpha = 2
    while sigma ** (alpha + 2) <= min(BUILD_ENTRY_CAP, budget // 4):
        alpha += 2
    return alpha


def check_engine(engine: str, patterns: Sequence[Sequence[int]]) -> None:
    if engine not in ENGINES:
        raise EngineError(f"unknown engine {engine!r}; choose from {', '.join(ENGINES)}")
    if not patterns:
        raise EngineError("no patterns given")
    if any(len(p) == 0 for p in patterns):
        raise EngineError("empty patterns are not allowed")
    if engine in SINGLE_ONLY and len(patterns) != 1:
        raise EngineError(f"engine {engine} takes exactly one pattern, got {len(patterns)}")


def default_engine(patterns: Sequence[Sequence[int]]) -> str:
    return "single" if len(patterns) == 1 else "acsim"


def build(engine: str, patterns: Sequence[Sequence[int]], sigma: int, *, alpha: int | None = None,
          budget: int = DEFAULT_BUDGET):
    """A matcher object with ``find_all(text, stats)``."""
    check_engine(engine, patterns)
    if engine == "acsim":
        return MultiMatcher(patterns, sigma)
    if engine == "tabmulti":
        return TabMultiMatcher(patterns, sigma, alpha or default_tab_alpha(sigma, budget), budget=budget)
    if engine == "single":
        return SingleMatcher(patterns[0], sigma)
    if engine == "singletab":
        return TabSingleMatcher(patterns[0], sigma, alpha or default_single_alpha(sigma, budget), budget=budget)
    return _Baseline(engine, patterns, sigma)


class _Baseline:
    def __init__(self, engine: str, patterns, sigma: int):
        self.engine = engine
        self.patterns = [tuple(p) for p in patterns]
        self.sigma = sigma
        self.ac = AcAutomaton(self.patterns) if engine == "ac" else None

    def find_all(self, text, stats: Stats | None = None) -> list[Occurrence]:
        chars = as_packed(text, self.sigma).symbols() if not isinstance(text, (list, tuple)) else text
        if self.engine == "ac":
            return self.ac.find_all(chars, stats)
        if self.engine == "kmp":
            if stats is not None:
                stats.transitions += len(chars)
            return kmp_find_all(self.patterns[0], chars)
        return naive_find_all(self.patterns, chars)


def run(engine: str, patterns, text, sigma: int, *, alpha: int | None = None,
        budget: int = DEFAULT_BUDGET, stats: Stats | None = None) -> list[Occurrence]:
    """Occurrences sorted by ``(end, start, pattern_id)``."""
    matcher = build(engine, patterns, sigma, alpha=alpha, budget=budget)
    return sort_occurrences(matcher.find_all(text, stats))
