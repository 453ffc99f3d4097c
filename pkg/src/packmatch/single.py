"""Single-pattern matching by periodicity, plus a tabulated short-pattern variant.

A window of ``m + h`` text characters (``h = m // 3``) is examined per step
and the window slides by ``h + 1``, so every start position is owned by
exactly one window.  In a window ``W`` the middle factor ``q = W[h:m]`` of
length ``m - h`` must be a factor of ``p`` for anything to match.  A hash
dictionary over those factors gives the first position, occurrence count
and shortest period of ``q`` in ``p``.  When ``q`` occurs more than once it
is periodic, ``q = (uv)^t u``, and two repetition searches (``uv`` leftwards
in ``W[:h]`` and ``vu`` rightwards in ``W[m:]``) count its occurrences in
``W``.  Comparing the parts of ``p`` outside the run of ``q``'s then pins
down every match.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .acsim import as_packed
from .bitpack import (
    PackedText,
    compare_equal,
    longest_prefix_repetition,
    longest_suffix_repetition,
    lsb,
    pack_text,
    substring,
)
from .core import Occurrence, Stats
from .oracle import kmp_find_all
from .strorder import build_string_mph, factor_hashes
from .tabmulti import DEFAULT_BUDGET, BudgetError, block_code, string_code


def suffix_array(seq: Sequence[int]) -> np.ndarray:
    """Suffix array by prefix doubling (numpy lexsort per round)."""
    n = len(seq)
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    rank = np.unique(np.asarray(seq, dtype=np.int64), return_inverse=True)[1].astype(np.int64)
    k = 1
    while True:
        second = np.full(n, -1, dtype=np.int64)
        if k < n:
            second[: n - k] = rank[k:]
        order = np.lexsort((second, rank))
        r1, r2 = rank[order], second[order]
        step = np.concatenate(([0], np.cumsum((r1[1:] != r1[:-1]) | (r2[1:] != r2[:-1]))))
        rank = np.empty(n, dtype=np.int64)
        rank[order] = step
        if step[-1] == n - 1:
            return order
        k *= 2


def lcp_array(seq: Sequence[int], sa: np.ndarray) -> list[int]:
    """Kasai: ``lcp[i]`` = common prefix of suffixes ``sa[i-1]`` and ``sa[i]``."""
    n = len(seq)
    rank = [0] * n
    for i, s in enumerate(sa.tolist()):
        rank[s] = i
    lcp = [0] * n
    k = 0
    for i in range(n):
        r = rank[i]
        if r == 0:
            k = 0
            continue
        j = int(sa[r - 1])
        while i + k < n and j + k < n and seq[i + k] == seq[j + k]:
            k += 1
        lcp[r] = k
        if k:
            k -= 1
    return lcp


@dataclass(frozen=True)
class FactorTriplet:
    alpha: int   # first occurrence in p
    beta: int    # number of occurrences in p
    period: int  # shortest period; 0 when beta == 1


def factor_census(seq: Sequence[int], length: int) -> list[FactorTriplet]:
    """Triplets of the distinct length-``length`` factors of ``seq``.

    Suffixes sharing a length-``length`` prefix are adjacent in the suffix
    array with pairwise lcp >= length; each such group is one factor.
    """
    n = len(seq)
    sa = suffix_array(seq)
    lcp = lcp_array(seq, sa)
    out = []
    group: list[int] = []
    for i, s in enumerate(sa.tolist()):
        if group and lcp[i] < length:
            out.append(_triplet(group))
            group = []
        if n - s >= length:
            group.append(s)
    if group:
        out.append(_triplet(group))
    return out


def _triplet(positions: list[int]) -> FactorTriplet:
    positions = sorted(positions)
    if len(positions) == 1:
        return FactorTriplet(positions[0], 1, 0)
    return FactorTriplet(positions[0], len(positions), positions[1] - positions[0])


@dataclass(frozen=True)
class FactorRun:
    """A factor's triplet plus the split of ``p`` around its run.

    ``p = y (uv)^(t+beta-1) u z`` with ``|uv| = period``; ``y`` is
    ``p[:alpha]`` and ``z`` is ``p[z_start:]``.
    """

    triplet: FactorTriplet
    uv: PackedText | None = None
    vu: PackedText | None = None
    u_len: int = 0
    z_start: int = 0
    y_suffix_of_uv: bool = False
    z_prefix_of_vu: bool = False


class SingleMatcher:
    def __init__(self, pattern: Sequence[int], sigma: int, *, rng: random.Random | None = None, check: bool = True):
        p = tuple(pattern)
        if not p:
            raise ValueError("pattern must be non-empty")
        self.sigma = sigma
        self.pattern = p
        self.m = m = len(p)
        self.p = pack_text(p, sigma)
        self.degenerate = m < 3
        self.h = m // 3
        self.runs: list[FactorRun] = []
        if self.degenerate:
            self.mph = None
            return
        h = self.h
        L = m - h
        self.factor_length = L
        triplets = factor_census(p, L)
        if check and len(triplets) > h + 1:
            raise AssertionError("more distinct factors than window positions")
        for tr in triplets:
            self.runs.append(self._run(tr, check))
        self._run_at = {run.triplet.alpha: run for run in self.runs}

        def fps(gamma, width):
            table = factor_hashes(self.p, L, gamma, width)
            return [table[tr.alpha] for tr in triplets]

        self.mph = build_string_mph(
            [(self.p, tr.alpha, L) for tr in triplets],
            list(range(len(triplets))),
            fingerprints=fps,
            total_chars=m,
            rng=rng,
        )

    def _run(self, tr: FactorTriplet, check: bool) -> FactorRun:
        p, m, L = self.pattern, self.m, self.factor_length
        if tr.beta == 1:
            return FactorRun(tr, z_start=tr.alpha + L)
        g = tr.period
        u_len = L % g
        a = tr.alpha
        run_end = a + (tr.beta - 1) * g + L  # exclusive
        y_len = a
        z_len = m - run_end
        if check:
            q = p[a:a + L]
            occ = [s for s in range(m - L + 1) if p[s:s + L] == q]
            if occ != list(range(a, a + tr.beta * g, g)):
                raise AssertionError(f"occurrences of factor at {a} are not an arithmetic run")
            if 2 * g > L:
                raise AssertionError("repeated factor with period above half its length")
        return FactorRun(
            tr,
            uv=substring(self.p, a, g),
            vu=substring(self.p, a + u_len, g),
            u_len=u_len,
            z_start=run_end,
            y_suffix_of_uv=y_len <= g and compare_equal(self.p, 0, y_len, self.p, a + g - y_len, y_len),
            z_prefix_of_vu=z_len <= g and compare_equal(self.p, run_end, z_len, self.p, a + u_len, z_len),
        )

    def triplet_of(self, factor: Sequence[int]) -> FactorTriplet | None:
        """Dictionary lookup plus verification; ``None`` for non-factors."""
        q = pack_text(list(factor), self.sigma)
        run = self._lookup(q, 0)
        return None if run is None else run.triplet

    def run_of(self, triplet: FactorTriplet) -> FactorRun:
        return self._run_at[triplet.alpha]

    def _lookup(self, text: PackedText, qpos: int) -> FactorRun | None:
        L = self.factor_length
        run = self.runs[self.mph.lookup(text, qpos, L)]
        if not compare_equal(self.p, run.triplet.alpha, L, text, qpos, L):
            return None
        return run

    def count_q_occurrences(self, text: PackedText, ws: int, run: FactorRun) -> tuple[int, int, int]:
        """``(i', i'', c)``: copies of ``uv`` ending at the window's ``q``,
        copies of ``vu`` following it, and the count of ``q`` in the window."""
        m, h = self.m, self.h
        left = substring(text, ws, h)
        right_len = max(0, min(ws + m + h, text.length) - (ws + m))
        right = substring(text, ws + m, right_len)
        i1 = longest_suffix_repetition(run.uv, left)
        i2 = longest_prefix_repetition(run.vu, right)
        return i1, i2, i1 + i2 + 1

    def match_window(self, text: PackedText, ws: int, stats: Stats | None = None) -> list[int]:
        """Start positions of ``p`` in ``[ws, ws + h]`` (absolute)."""
        m, h, L = self.m, self.h, self.factor_length
        n = text.length
        if stats is not None:
            stats.windows += 1
            stats.mph_lookups += 1
        if ws + m > n:
            return []
        qpos = ws + h
        run = self._lookup(text, qpos)
        if run is None:
            return []
        tr = run.triplet
        a = tr.alpha
        p = self.p
        if tr.beta == 1:
            s = qpos - a
            rest = m - a - L
            if s + m <= n and compare_equal(p, 0, a, text, s, a) and compare_equal(
                p, a + L, rest, text, qpos + L, rest
            ):
                return [s]
            return []

        g = tr.period
        i1, i2, c_window = self.count_q_occurrences(text, ws, run)
        last = c_window - tr.beta
        if last < 0:
            return []
        wend = min(ws + m + h, n)
        y_len = a
        z_len = m - run.z_start
        first_start = qpos - i1 * g - y_len
        z_at = qpos + i2 * g + L
        y_ok = first_start >= ws and compare_equal(p, 0, y_len, text, first_start, y_len)
        z_ok = z_at + z_len <= wend and compare_equal(p, run.z_start, z_len, text, z_at, z_len)
        # the leftmost candidate needs y = y', the rightmost z = z'; inner
        # candidates sit inside the run, so y and z must extend the period
        middle = run.y_suffix_of_uv and run.z_prefix_of_vu
        out = []
        for k in range(last + 1):
            if 0 < k < last and not middle:
                continue
            left = y_ok if k == 0 else run.y_suffix_of_uv
            right = z_ok if k == last else run.z_prefix_of_vu
            if left and right:
                out.append(first_start + k * g)
        return out

    def find_all(self, text, stats: Stats | None = None) -> list[Occurrence]:
        text = as_packed(text, self.sigma)
        if self.degenerate:
            if stats is not None:
                stats.transitions += text.length
            return kmp_find_all(self.pattern, text.symbols())
        m = self.m
        step = self.h + 1
        out = []
        ws = 0
        while ws + m <= text.length:
            out.extend(Occurrence(0, s, s + m - 1) for s in self.match_window(text, ws, stats))
            ws += step
        return out


def build_single(p: Sequence[int], sigma: int, **kw) -> SingleMatcher:
    return SingleMatcher(p, sigma, **kw)


def count_q_occurrences(sm: SingleMatcher, window: PackedText, triplet: FactorTriplet) -> tuple[int, int, int]:
    """``(i', i'', c)`` for a standalone window of length ``m + h``."""
    return sm.count_q_occurrences(window, 0, sm.run_of(triplet))


def match_window(sm: SingleMatcher, window: PackedText, window_abs: int = 0) -> list[Occurrence]:
    return [
        Occurrence(0, s + window_abs, s + window_abs + sm.m - 1) for s in sm.match_window(window, 0)
    ]


def find_all_single(sm: SingleMatcher, text, stats: Stats | None = None) -> list[Occurrence]:
    return sm.find_all(text, stats)


class TabSingleMatcher:
    """Lookup table over every length-``alpha`` string: bit ``r`` of entry
    ``s`` is set when ``p`` starts at offset ``r < alpha/2`` of ``s``.

    Patterns with ``m > alpha/2`` go to :class:`SingleMatcher` instead.
    """

    def __init__(self, pattern: Sequence[int], sigma: int, alpha: int, *, budget: int = DEFAULT_BUDGET):
        if alpha < 2 or alpha % 2:
            raise ValueError("alpha must be an even number >= 2")
        self.sigma = sigma
        self.alpha = alpha
        self.single = SingleMatcher(pattern, sigma)
        self.m = m = len(self.single.pattern)
        self.table = None
        if 2 * m > alpha:
            return
        half = alpha // 2
        dtype = np.uint32 if half <= 32 else np.uint64
        entries = sigma**alpha
        needed = entries * np.dtype(dtype).itemsize
        if needed > budget:
            raise BudgetError(needed, budget)
        codes = np.arange(entries, dtype=np.int64)
        target = string_code(self.single.pattern, sigma)
        window = sigma**m
        table = np.zeros(entries, dtype=dtype)
        for r in range(half):
            hit = (codes // sigma**r) % window == target
            table |= hit.astype(dtype) << dtype(r)
        self.table = table

    @property
    def entry_count(self) -> int:
        return 0 if self.table is None else int(self.table.size)

    def starts_in(self, code: int) -> list[int]:
        mask = int(self.table[code])
        out = []
        while mask:
            r = lsb(mask)
            out.append(r)
            mask &= mask - 1
        return out

    def find_all(self, text, stats: Stats | None = None) -> list[Occurrence]:
        if self.table is None:
            return self.single.find_all(text, stats)
        text = as_packed(text, self.sigma)
        n, m, a = text.length, self.m, self.alpha
        half = a // 2
        out = []
        pos = 0
        while pos + a <= n:
            if stats is not None:
                stats.table_lookups += 1
            for r in self.starts_in(block_code(text, pos, a, self.sigma)):
                out.append(Occurrence(0, pos + r, pos + r + m - 1))
            pos += half
        # starts from pos on were not owned by any full window
        p = self.single.p
        for s in range(pos, n - m + 1):
            if compare_equal(p, 0, m, text, s, m):
                out.append(Occurrence(0, s, s + m - 1))
        return out


def build_single_tab(p: Sequence[int], sigma: int, alpha: int, budget: int = DEFAULT_BUDGET) -> TabSingleMatcher:
    return TabSingleMatcher(p, sigma, alpha, budget=budget)


def find_all_single_tab(tsm: TabSingleMatcher, text, stats: Stats | None = None) -> list[Occurrence]:
    return tsm.find_all(text, stats)
