"""Stabbing structures and longest prefix/suffix string indexes.

* :class:`Stab1D` -- tightest enclosing interval of a point, for a laminar
  family.  Endpoints cut the universe into elementary segments; each
  segment remembers its tightest interval and a predecessor search (bisect
  over the sorted boundaries) finds the segment of a query point.
* :class:`Stab2D` -- all rectangles enclosing a point.  A segment tree over
  the x boundaries stores each rectangle at O(log n) canonical nodes; every
  node answers y-stabbing with a centred interval tree.
* :class:`LongestPrefixIndex` / :class:`LongestSuffixIndex` -- the longest
  stored string that is a prefix (suffix) of a query string, plus its rank.
  Stored strings are handles into shared packed storage.
"""

from __future__ import annotations

from bisect import bisect_right
from typing import NamedTuple, Sequence

from .bitpack import PackedText, lsb, msb, read_chars, unpack
from .strorder import is_prefix, suffix_key


class NonLaminarError(ValueError):
    pass


class Interval1D(NamedTuple):
    lo: int
    hi: int
    id: int


class Rect2D(NamedTuple):
    x_lo: int
    x_hi: int
    y_lo: int
    y_hi: int
    id: int


class Match(NamedTuple):
    rank: int
    length: int
    exact: bool


class Stab1D:
    def __init__(self, intervals: Sequence[Interval1D], *, check: bool = True):
        ivs = sorted(intervals, key=lambda iv: (iv.lo, -iv.hi))
        for iv in ivs:
            if iv.lo > iv.hi:
                raise ValueError(f"empty interval {iv}")
        if check:
            _check_laminar(ivs)
        self.size = len(ivs)
        bounds = sorted({iv.lo for iv in ivs} | {iv.hi + 1 for iv in ivs})
        owner: list[int | None] = []
        stack: list[Interval1D] = []
        k = 0
        for x in bounds:
            while stack and stack[-1].hi < x:
                stack.pop()
            while k < len(ivs) and ivs[k].lo == x:
                stack.append(ivs[k])
                k += 1
            owner.append(stack[-1].id if stack else None)
        self.bounds = bounds
        self.owner = owner

    def query(self, point: int) -> int | None:
        k = bisect_right(self.bounds, point) - 1
        if k < 0:
            return None
        return self.owner[k]


def _check_laminar(ivs: Sequence[Interval1D]) -> None:
    stack: list[Interval1D] = []
    for iv in ivs:
        while stack and stack[-1].hi < iv.lo:
            stack.pop()
        if stack and iv.hi > stack[-1].hi:
            raise NonLaminarError(f"intervals {stack[-1]} and {iv} cross")
        stack.append(iv)


def build_stab1d(intervals: Sequence[Interval1D], check: bool = True) -> Stab1D:
    return Stab1D(intervals, check=check)


def query_stab1d(s: Stab1D, point: int) -> int | None:
    return s.query(point)


class IntervalStabber:
    """Centred interval tree: all intervals containing a point, O(log n + k)."""

    _LEAF = 8

    def __init__(self, intervals: Sequence[tuple[int, int, int]]):
        # node: (center, by_lo, by_hi_desc, left, right) or a plain list for small sets
        self.root = self._build(list(intervals))

    def _build(self, ivs):
        if len(ivs) <= self._LEAF:
            return ivs
        ends = sorted([iv[0] for iv in ivs] + [iv[1] for iv in ivs])
        center = ends[len(ends) // 2]
        left = [iv for iv in ivs if iv[1] < center]
        right = [iv for iv in ivs if iv[0] > center]
        mid = [iv for iv in ivs if iv[0] <= center <= iv[1]]
        by_lo = sorted(mid, key=lambda iv: iv[0])
        by_hi = sorted(mid, key=lambda iv: -iv[1])
        return (center, by_lo, by_hi, self._build(left), self._build(right))

    def query(self, y: int, out: list[int]) -> None:
        node = self.root
        while True:
            if isinstance(node, list):
                for lo, hi, rid in node:
                    if lo <= y <= hi:
                        out.append(rid)
                return
            center, by_lo, by_hi, left, right = node
            if y < center:
                for lo, _hi, rid in by_lo:
                    if lo > y:
                        break
                    out.append(rid)
                node = left
            elif y > center:
                for _lo, hi, rid in by_hi:
                    if hi < y:
                        break
                    out.append(rid)
                node = right
            else:
                out.extend(rid for _lo, _hi, rid in by_lo)
                return


class Stab2D:
    def __init__(self, rects: Sequence[Rect2D]):
        self.count = len(rects)
        xs = sorted({r.x_lo for r in rects} | {r.x_hi + 1 for r in rects})
        self.xs = xs
        nleaves = max(1, len(xs) - 1)
        size = 1
        while size < nleaves:
            size *= 2
        self.size = size
        lists: dict[int, list[tuple[int, int, int]]] = {}
        for r in rects:
            if r.x_lo > r.x_hi or r.y_lo > r.y_hi:
                raise ValueError(f"empty rectangle {r}")
            lo = bisect_right(xs, r.x_lo) - 1 + size
            hi = bisect_right(xs, r.x_hi + 1) - 1 + size
            entry = (r.y_lo, r.y_hi, r.id)
            while lo < hi:
                if lo & 1:
                    lists.setdefault(lo, []).append(entry)
                    lo += 1
                if hi & 1:
                    hi -= 1
                    lists.setdefault(hi, []).append(entry)
                lo >>= 1
                hi >>= 1
        self.nodes = {node: IntervalStabber(ivs) for node, ivs in lists.items()}
        self.stored = sum(len(v) for v in lists.values())

    def query(self, x: int, y: int) -> list[int]:
        out: list[int] = []
        k = bisect_right(self.xs, x) - 1
        if k < 0 or k >= len(self.xs) - 1:
            return out
        node = k + self.size
        nodes = self.nodes
        while node:
            st = nodes.get(node)
            if st is not None:
                st.query(y, out)
            node >>= 1
        return out


def build_stab2d(rects: Sequence[Rect2D]) -> Stab2D:
    return Stab2D(rects)


def query_stab2d(s: Stab2D, point: tuple[int, int]) -> list[int]:
    return s.query(point[0], point[1])


Handle = tuple[int, int]  # (start, length) inside the shared store


class LongestPrefixIndex:
    """Stored strings sorted in prefix-lexicographic order.

    A query binary-searches the predecessor of ``x``, measures its longest
    common prefix with ``x`` word-parallel, then climbs the chain of stored
    prefixes of that predecessor to the longest one that fits.
    """

    suffix = False

    def __init__(self, store: PackedText, handles: Sequence[Handle]):
        self.store = store
        syms = unpack(store)
        keyed: dict[tuple, Handle] = {}
        for start, length in handles:
            keyed.setdefault(self._key(tuple(syms[start:start + length])), (start, length))
        keys = sorted(keyed)
        self.handles = [keyed[k] for k in keys]
        self.lengths = [h[1] for h in self.handles]
        self.parent = self._parents(keys)
        self._bpc = store.bits_per_char
        self._cmask = (1 << self._bpc) - 1
        self._vals = [read_chars(store, start, length) for start, length in self.handles]

    def __len__(self) -> int:
        return len(self.handles)

    @staticmethod
    def _key(s: tuple) -> tuple:
        return s

    def _parents(self, items: list[tuple]) -> list[int]:
        # items are keys (reversed strings for the suffix index); in sorted
        # order every stored key-prefix of an item is still on the stack
        parent = [-1] * len(items)
        stack: list[int] = []
        for i, s in enumerate(items):
            while stack and not is_prefix(items[stack[-1]], s):
                stack.pop()
            parent[i] = stack[-1] if stack else -1
            stack.append(i)
        return parent

    def _order(self, i: int, xv: int, xl: int) -> tuple[bool, int]:
        """Whether stored string ``i`` sorts at or before the query (packed
        value ``xv``, length ``xl``) and their longest common prefix."""
        sv, length = self._vals[i], self.lengths[i]
        k = min(length, xl)
        diff = (sv ^ xv) & ((1 << (k * self._bpc)) - 1)
        if not diff:
            return length <= xl, k
        common = lsb(diff) // self._bpc
        shift = common * self._bpc
        return (sv >> shift) & self._cmask < (xv >> shift) & self._cmask, common

    def query(self, x: PackedText, xs: int = 0, xl: int | None = None) -> Match | None:
        if xl is None:
            xl = x.length - xs
        # the query is read once; every probe is then one xor plus lsb/msb
        xv = read_chars(x, xs, xl)
        lo, hi = 0, len(self.handles)
        best = -1
        best_common = 0
        order = self._order
        while lo < hi:
            mid = (lo + hi) // 2
            le, common = order(mid, xv, xl)
            if le:
                best, best_common = mid, common
                lo = mid + 1
            else:
                hi = mid
        i = best
        while i >= 0 and self.lengths[i] > best_common:
            i = self.parent[i]
        if i < 0:
            return None
        return Match(i, self.lengths[i], self.lengths[i] == xl)


class LongestSuffixIndex(LongestPrefixIndex):
    """Mirror of :class:`LongestPrefixIndex` in suffix-lexicographic order."""

    suffix = True

    @staticmethod
    def _key(s: tuple) -> tuple:
        return suffix_key(s)

    def _order(self, i: int, xv: int, xl: int) -> tuple[bool, int]:
        sv, length = self._vals[i], self.lengths[i]
        bpc = self._bpc
        k = min(length, xl)
        diff = (sv >> ((length - k) * bpc)) ^ (xv >> ((xl - k) * bpc))
        if not diff:
            return length <= xl, k
        common = k - 1 - msb(diff) // bpc
        a = (sv >> ((length - 1 - common) * bpc)) & self._cmask
        b = (xv >> ((xl - 1 - common) * bpc)) & self._cmask
        return a < b, common


def build_lpi(store: PackedText, handles: Sequence[Handle]) -> LongestPrefixIndex:
    return LongestPrefixIndex(store, handles)


def query_lpi(ix: LongestPrefixIndex, x: PackedText, xs: int = 0, xl: int | None = None):
    return ix.query(x, xs, xl)


def build_lsi(store: PackedText, handles: Sequence[Handle]) -> LongestSuffixIndex:
    return LongestSuffixIndex(store, handles)


def query_lsi(ix: LongestSuffixIndex, x: PackedText, xs: int = 0, xl: int | None = None):
    return ix.query(x, xs, xl)
