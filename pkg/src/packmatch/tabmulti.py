"""Multi-pattern matching with short-match lookup tables.

The block matcher reads blocks of ``alpha`` characters no matter how short
the patterns are.  Occurrences that start strictly inside a block and end
in it are not visible to the block reporter.  For these, a precomputed table
of every possible block content lists the pattern occurrences it holds.
One table exists per block length ``u`` in ``[1, alpha)``.
"""

from __future__ import annotations

from typing import Sequence

from .acsim import MultiMatcher, as_packed
from .bitpack import PackedText, extract_char, read_chars
from .core import Occurrence, Stats, sort_occurrences

DEFAULT_BUDGET = 64 << 20
ENTRY_BYTES = 8  # one list reference per table slot


class BudgetError(MemoryError):
    def __init__(self, needed: int, budget: int):
        super().__init__(f"lookup tables need at least {needed} bytes, budget is {budget}")
        self.needed = needed
        self.budget = budget


def table_entries(sigma: int, alpha: int) -> int:
    return sum(sigma**u for u in range(1, alpha))


def table_bytes(sigma: int, alpha: int) -> int:
    return ENTRY_BYTES * table_entries(sigma, alpha)


def alpha_for_budget(budget: int, sigma: int) -> int:
    """Largest block size whose tables fit in ``budget`` bytes (at least 2)."""
    alpha = 2
    while table_bytes(sigma, alpha + 1) <= budget:
        alpha += 1
    if table_bytes(sigma, alpha) > budget:
        raise BudgetError(table_bytes(sigma, alpha), budget)
    return alpha


def is_power_of_two(x: int) -> bool:
    return x > 0 and x & (x - 1) == 0


def block_code(text: PackedText, pos: int, u: int, sigma: int) -> int:
    """Little-endian base-``sigma`` code of ``text[pos:pos+u]``."""
    if is_power_of_two(sigma) or sigma == 1:
        return read_chars(text, pos, u)
    code = 0
    for k in range(u - 1, -1, -1):
        code = code * sigma + extract_char(text, pos + k)
    return code


def string_code(s: Sequence[int], sigma: int) -> int:
    code = 0
    for c in reversed(s):
        code = code * sigma + c
    return code


class ShortMatchTable:
    """Occurrences of the patterns of length <= u inside each length-u string."""

    def __init__(self, u: int, entries: list):
        self.u = u
        self.entries = entries

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, code: int) -> tuple:
        return self.entries[code]


def build_short_tables(patterns: Sequence[Sequence[int]], sigma: int, alpha: int) -> list[ShortMatchTable]:
    """Tables for u = 1 .. alpha-1, each built from the previous one.

    The string with code ``c`` is its first symbol ``c % sigma`` followed by
    the string with code ``c // sigma``, so its occurrences are the patterns
    that are prefixes of it plus the shorter table's entry shifted by one.
    """
    by_len: dict[int, dict[int, list[int]]] = {}
    for pid, p in enumerate(patterns):
        if len(p) < alpha:
            by_len.setdefault(len(p), {}).setdefault(string_code(p, sigma), []).append(pid)
    tables = []
    prev: list[tuple] = [()]
    for u in range(1, alpha):
        size = sigma**u
        found: dict[int, list] = {}
        # patterns that are prefixes: every code congruent to theirs mod sigma^len
        for ln, codes in sorted(by_len.items()):
            if ln > u:
                break
            mod = sigma**ln
            for pcode, ids in codes.items():
                occ = [(pid, 0, ln - 1) for pid in ids]
                for code in range(pcode, size, mod):
                    found.setdefault(code, []).extend(occ)
        # occurrences of the tail string, one position to the right
        for tail_code, tail in enumerate(prev):
            if tail:
                shifted = [(pid, s + 1, e + 1) for pid, s, e in tail]
                for first in range(sigma):
                    found.setdefault(tail_code * sigma + first, []).extend(shifted)
        cur: list[tuple] = [()] * size
        for code, occ in found.items():
            cur[code] = tuple(occ)
        tables.append(ShortMatchTable(u, cur))
        prev = cur
    return tables


class TabMultiMatcher:
    def __init__(
        self,
        patterns: Sequence[Sequence[int]],
        sigma: int,
        alpha: int,
        *,
        budget: int = DEFAULT_BUDGET,
        check: bool = True,
    ):
        if alpha < 2:
            raise ValueError("alpha must be at least 2")
        needed = table_bytes(sigma, alpha)
        if needed > budget:
            raise BudgetError(needed, budget)
        self.sigma = sigma
        self.alpha = alpha
        self.base = MultiMatcher(patterns, sigma, block=alpha, check=check)
        self.tables = build_short_tables([tuple(p) for p in patterns], sigma, alpha)

    @property
    def entry_count(self) -> int:
        return sum(len(t) for t in self.tables)

    def query_short(self, u: int, code: int) -> tuple:
        if not 1 <= u < self.alpha:
            raise ValueError(f"block length {u} outside [1, {self.alpha})")
        return self.tables[u - 1][code]

    def find_all(self, text, stats: Stats | None = None) -> list[Occurrence]:
        text = as_packed(text, self.sigma)
        n = text.length
        a = self.alpha
        base = self.base
        out: list[Occurrence] = []
        state = 0
        pos = 0
        while pos < n:
            end = min(pos + a, n) - 1
            out.extend(base.report_block(state, text, pos, end - pos + 1, stats))
            u = end - pos
            if u >= 1:
                if stats is not None:
                    stats.table_lookups += 1
                inner = pos + 1
                for pid, s, e in self.tables[u - 1][block_code(text, inner, u, self.sigma)]:
                    out.append(Occurrence(pid, inner + s, inner + e))
            if pos + a >= n:
                break
            state = base.transition(state, text, pos, stats)
            pos += a
        return sort_occurrences(out)


def build_tabulated(patterns, sigma: int, alpha: int, budget: int = DEFAULT_BUDGET) -> TabMultiMatcher:
    return TabMultiMatcher(patterns, sigma, alpha, budget=budget)


def query_short(tm: TabMultiMatcher, u: int, block_code_value: int) -> tuple:
    return tm.query_short(u, block_code_value)


def find_all_tab(tm: TabMultiMatcher, text, stats: Stats | None = None) -> list[Occurrence]:
    return tm.find_all(text, stats)
