"""Aho-Corasick simulated ``b`` characters at a time.

States are the pattern prefixes ``P`` (empty string included), numbered by
their rank in suffix-lexicographic order.  The text is read in blocks of
``b`` characters.  For each block the matcher

1. reports every occurrence ending inside the block that started at or
   before the block start.  This is one longest-prefix query on the block
   and one 2D stabbing query at ``(state, rank)``.
2. jumps to the state reached after the whole block.  It does a hash lookup
   of the block among length-``b`` pattern factors, verifies the hit, then
   asks the 1D stabbing structure for the tightest interval around
   ``factor_id * (S + 1) + state``.  If that finds nothing it falls back to a
   longest-suffix query over the short prefixes.

Choosing ``b`` as the shortest pattern length makes step 1 complete, since
no occurrence can both start after a block start and end in that block.
"""

from __future__ import annotations

import random
from typing import Sequence

from .bitpack import PackedText, compare_equal, pack_text
from .core import Occurrence, Stats, sort_occurrences
from .stab import Interval1D, LongestPrefixIndex, LongestSuffixIndex, Rect2D, Stab1D, Stab2D
from .strorder import SortedStrings, build_string_mph, factor_hashes


class EmptyPatternError(ValueError):
    pass


def as_packed(text, sigma: int) -> PackedText:
    if isinstance(text, PackedText):
        return text
    return pack_text(list(text), sigma)


class MultiMatcher:
    def __init__(
        self,
        patterns: Sequence[Sequence[int]],
        sigma: int,
        *,
        block: int | None = None,
        check: bool = True,
        rng: random.Random | None = None,
    ):
        pats = [tuple(p) for p in patterns]
        if not pats:
            raise ValueError("need at least one pattern")
        if any(len(p) == 0 for p in pats):
            raise EmptyPatternError("patterns must be non-empty")
        self.sigma = sigma
        self.d = len(pats)

        # one copy of each distinct pattern in A; ids of duplicates ride along
        uniq: dict[tuple, int] = {}
        for p in pats:
            uniq.setdefault(p, len(uniq))
        unique = list(uniq)
        self.ids_of_unique: list[tuple[int, ...]] = [() for _ in unique]
        for pid, p in enumerate(pats):
            u = uniq[p]
            self.ids_of_unique[u] = self.ids_of_unique[u] + (pid,)
        offsets = []
        concat: list[int] = []
        for p in unique:
            offsets.append(len(concat))
            concat.extend(p)
        self.A = pack_text(concat, sigma)
        self.patterns = [(offsets[uniq[p]], len(p)) for p in pats]
        self.m = len(concat)

        b = block if block is not None else min(len(p) for p in pats)
        if b < 1:
            raise ValueError("block size must be positive")
        self.b = b

        prefixes = {()}
        for p in unique:
            for k in range(1, len(p) + 1):
                prefixes.add(p[:k])
        P = SortedStrings(prefixes, suffix=True, sigma=sigma)
        self._P = P
        self.state_count = S = len(P)
        self.state_of = {x: i for i, x in enumerate(P.items)}
        state_of = self.state_of

        # B1 / T1: longest element of P of length in [1, b] suffixing a string
        short_prefixes = [
            (off, k) for off, p in zip(offsets, unique) for k in range(1, min(b, len(p)) + 1)
        ]
        self.b1 = LongestSuffixIndex(self.A, short_prefixes)
        self.t1 = [state_of[tuple(concat[s:s + ln])] for s, ln in self.b1.handles]

        # B2: distinct length-b factors -> (factor id, canonical offset in A)
        factor_id: dict[tuple, int] = {}
        canon: list[int] = []
        for off, p in zip(offsets, unique):
            for s in range(len(p) - b + 1):
                f = p[s:s + b]
                if f not in factor_id:
                    factor_id[f] = len(canon)
                    canon.append(off + s)
        self.factor_count = len(canon)

        def fps(gamma, width):
            table = factor_hashes(self.A, b, gamma, width)
            return [table[o] for o in canon]

        self.b2 = build_string_mph(
            [(self.A, o, b) for o in canon],
            [(i, o) for i, o in enumerate(canon)],
            fingerprints=fps,
            total_chars=max(1, self.m),
            rng=rng,
        )

        # 1D stabbing / T2: one interval per x = p'q' in P with |q'| = b
        intervals = []
        self.t2: list[int] = []
        for x in P.items:
            if len(x) < b:
                continue
            head, tail = x[:-b], x[len(x) - b:]
            base = factor_id[tail] * (S + 1)
            lo = base + state_of[head]
            intervals.append(Interval1D(lo, lo + P.count(head) - 1, len(self.t2)))
            self.t2.append(state_of[x])
        self.stab1 = Stab1D(intervals, check=check)
        self.interval_count = len(intervals)

        # B3 over U: suffixes of patterns with length in [1, b]
        suffix_handles = [
            (off + len(p) - k, k) for off, p in zip(offsets, unique) for k in range(1, min(b, len(p)) + 1)
        ]
        self.b3 = LongestPrefixIndex(self.A, suffix_handles)
        U = SortedStrings(
            [p[len(p) - k:] for p in unique for k in range(1, min(b, len(p)) + 1)],
            suffix=False,
            sigma=sigma,
        )
        self._U = U

        # 2D stabbing / T3: rectangle per (pattern, split) with |q'| in [1, b]
        rects = []
        self.t3: list[tuple[tuple[int, ...], int, int]] = []
        for u, p in enumerate(unique):
            ln = len(p)
            for i in range(1, min(b, ln) + 1):
                head, tail = p[:ln - i], p[ln - i:]
                x_lo = state_of[head]
                y_lo = U.rank(tail)
                rid = len(self.t3)
                rects.append(
                    Rect2D(x_lo, x_lo + P.count(head) - 1, y_lo, y_lo + U.count(tail) - 1, rid)
                )
                self.t3.append((self.ids_of_unique[u], ln - i, i))
        self.stab2 = Stab2D(rects)
        self.rect_count = len(rects)

    # -- state bijection ---------------------------------------------------

    def prefix_of_state(self, state: int) -> tuple[int, ...]:
        return self._P.items[state]

    def state(self, prefix: Sequence[int]) -> int:
        return self.state_of[tuple(prefix)]

    def sizes(self) -> dict[str, int]:
        return {
            "states": self.state_count,
            "intervals": self.interval_count,
            "rectangles": self.rect_count,
            "mph_keys": self.b2.key_count,
            "short_prefixes": len(self.b1),
            "short_suffixes": len(self.b3),
        }

    # -- queries -------------------------------------------------------------

    def transition(self, state: int, text: PackedText, pos: int = 0, stats: Stats | None = None) -> int:
        """State after reading ``text[pos:pos+b]`` from ``state``."""
        b = self.b
        hit = self.b2.lookup(text, pos, b)
        if stats is not None:
            stats.transitions += 1
            stats.mph_lookups += 1
        if hit is not None:
            fid, off = hit
            if compare_equal(self.A, off, b, text, pos, b):
                if stats is not None:
                    stats.stab1_queries += 1
                j = self.stab1.query(fid * (self.state_count + 1) + state)
                if j is not None:
                    return self.t2[j]
        if stats is not None:
            stats.suffix_index_queries += 1
        found = self.b1.query(text, pos, b)
        if found is None:
            return 0
        return self.t1[found.rank]

    def report_block(
        self, state: int, text: PackedText, pos: int, u: int, stats: Stats | None = None
    ) -> list[Occurrence]:
        """Occurrences ending in ``text[pos:pos+u]`` that start at or before ``pos``."""
        if stats is not None:
            stats.report_steps += 1
            stats.prefix_index_queries += 1
        found = self.b3.query(text, pos, min(u, self.b))
        if found is None:
            return []
        if stats is not None:
            stats.stab2_queries += 1
        out = []
        t3 = self.t3
        for rid in self.stab2.query(state, found.rank):
            ids, head_len, tail_len = t3[rid]
            for pid in ids:
                out.append(Occurrence(pid, pos - head_len, pos + tail_len - 1))
        return out

    def find_all(self, text, stats: Stats | None = None) -> list[Occurrence]:
        text = as_packed(text, self.sigma)
        n = text.length
        b = self.b
        out: list[Occurrence] = []
        state = 0
        pos = 0
        while pos < n:
            out.extend(self.report_block(state, text, pos, min(b, n - pos), stats))
            if pos + b >= n:
                break
            state = self.transition(state, text, pos, stats)
            pos += b
        return sort_occurrences(out)

    def states_along(self, text) -> list[int]:
        """States at every block boundary (positions b, 2b, ...)."""
        text = as_packed(text, self.sigma)
        states = []
        state = 0
        for pos in range(0, text.length - self.b + 1, self.b):
            state = self.transition(state, text, pos)
            states.append(state)
        return states


def build_multi_matcher(patterns: Sequence[Sequence[int]], sigma: int, **kw) -> MultiMatcher:
    return MultiMatcher(patterns, sigma, **kw)


def transition(mm: MultiMatcher, state: int, block: PackedText) -> int:
    if block.length != mm.b:
        raise ValueError(f"block must have exactly b={mm.b} characters")
    return mm.transition(state, block, 0)


def report_block(mm: MultiMatcher, state: int, block: PackedText, abs_pos: int) -> list[Occurrence]:
    """``report_block`` on a standalone block whose first character sits at
    text position ``abs_pos``."""
    occ = mm.report_block(state, block, 0, block.length)
    return [Occurrence(o.pattern_id, o.start + abs_pos, o.end + abs_pos) for o in occ]


def find_all(mm: MultiMatcher, text, stats: Stats | None = None) -> list[Occurrence]:
    return mm.find_all(text, stats)

