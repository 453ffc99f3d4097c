"""String orders, rank/count references, fingerprints and a string MPH.

Two orders are used throughout.  The prefix-lexicographic order is plain
dictionary order.  The suffix-lexicographic order compares the reversed
strings, so strings sharing a suffix sort next to each other; AC states are
numbered by it.

The rank/count functions here are brute force.  Matchers use them while
building and tests use them as references.
"""

from __future__ import annotations

import random
from bisect import bisect_left
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import gmpy2

from .bitpack import PackedText, WORD_BITS, chars_per_word, read_chars

Sym = Sequence[int]

# fingerprints are evaluated modulo a Mersenne prime wider than one word,
# so every single block value is its own residue
MERSENNE_89 = (1 << 89) - 1


def _cmp(a, b) -> int:
    return (a > b) - (a < b)


def prefix_lex_compare(a: Sym, b: Sym) -> int:
    """-1, 0 or 1 as ``a`` sorts before, equal to, or after ``b``."""
    return _cmp(tuple(a), tuple(b))


def suffix_lex_compare(a: Sym, b: Sym) -> int:
    return _cmp(tuple(reversed(a)), tuple(reversed(b)))


def suffix_key(s: Sym) -> tuple:
    return tuple(reversed(s))


def is_prefix(x: Sym, y: Sym) -> bool:
    return len(x) <= len(y) and tuple(y[: len(x)]) == tuple(x)


def is_suffix(x: Sym, y: Sym) -> bool:
    return len(x) <= len(y) and tuple(y[len(y) - len(x):]) == tuple(x)


def prrank(X: Iterable[Sym], s: Sym) -> int:
    s = tuple(s)
    return sum(1 for x in X if tuple(x) < s)


def prcount(X: Iterable[Sym], s: Sym) -> int:
    return sum(1 for x in X if is_prefix(s, x))


def surank(X: Iterable[Sym], s: Sym) -> int:
    key = suffix_key(s)
    return sum(1 for x in X if suffix_key(x) < key)


def sucount(X: Iterable[Sym], s: Sym) -> int:
    return sum(1 for x in X if is_suffix(s, x))


class SortedStrings:
    """A set of strings sorted once, answering rank and count by bisection.

    ``suffix=True`` uses the suffix-lexicographic order.  ``count(s)`` is the
    number of members having ``s`` as a prefix (resp. suffix); those members
    occupy ranks ``[rank(s), rank(s) + count(s))``.
    """

    def __init__(self, strings: Iterable[Sym], *, suffix: bool = False, sigma: int):
        self.suffix = suffix
        self.sigma = sigma
        keyed = {self._key(s): tuple(s) for s in strings}
        self.keys = sorted(keyed)
        self.items = [keyed[k] for k in self.keys]

    def _key(self, s: Sym) -> tuple:
        return suffix_key(s) if self.suffix else tuple(s)

    def __len__(self) -> int:
        return len(self.keys)

    def rank(self, s: Sym) -> int:
        return bisect_left(self.keys, self._key(s))

    def count(self, s: Sym) -> int:
        key = self._key(s)
        # every extension of key sorts below key + (sigma,)
        return bisect_left(self.keys, key + (self.sigma,)) - bisect_left(self.keys, key)


GAMMA_BITS = 88


def fingerprint_width(total_chars: int) -> int:
    return min(WORD_BITS, 2 * max(1, total_chars).bit_length() + 16)


def random_prime(bits: int, rng: random.Random) -> int:
    lo = 1 << max(2, bits - 2)
    return int(gmpy2.next_prime(rng.randrange(lo, 1 << bits)))


def poly_hash(pt: PackedText, start: int, length: int, gamma: int, width: int = 64) -> int:
    """Polynomial fingerprint of ``pt[start:start+length]``.

    The substring is cut into blocks of ``B = WORD_BITS // bpc`` characters
    (the last one zero-padded) and the block values are combined by Horner's
    rule with multiplier ``gamma`` modulo a fixed Mersenne prime; the length
    is folded in last and the result truncated to ``width`` bits.
    """
    if length == 0:
        return 0
    B = chars_per_word(pt.sigma)
    if length <= B:
        return _finish(read_chars(pt, start, length), length, gamma, width)
    acc = 0
    for off in range(0, length, B):
        acc = (acc * gamma + read_chars(pt, start + off, min(B, length - off))) % MERSENNE_89
    return _finish(acc, length, gamma, width)


def _finish(acc: int, length: int, gamma: int, width: int) -> int:
    return ((acc * gamma + length) % MERSENNE_89) & ((1 << width) - 1)


def factor_hashes(pt: PackedText, length: int, gamma: int, width: int = 64) -> list[int]:
    """``poly_hash`` of every length-``length`` factor of ``pt``, in one pass
    per residue class of start positions modulo the block size."""
    n = pt.length
    if length == 0:
        return [0] * (n + 1)
    if length > n:
        return []
    B = chars_per_word(pt.sigma)
    nfull, rem = divmod(length, B)
    gpow = pow(gamma, nfull, MERSENNE_89)
    out = [0] * (n - length + 1)
    for r in range(min(B, n - length + 1)):
        # prefix[j] = Horner value of the j full blocks starting at r
        prefix = [0]
        acc = 0
        pos = r
        while pos + B <= n:
            acc = (acc * gamma + read_chars(pt, pos, B)) % MERSENNE_89
            prefix.append(acc)
            pos += B
        for j, start in enumerate(range(r, n - length + 1, B)):
            h = (prefix[j + nfull] - prefix[j] * gpow) % MERSENNE_89
            if rem:
                h = (h * gamma + read_chars(pt, start + nfull * B, rem)) % MERSENNE_89
            out[start] = _finish(h, length, gamma, width)
    return out


def _mix(x: int, seed: int) -> int:
    """splitmix64 finaliser of ``x`` xor ``seed``."""
    z = (x ^ seed) & 0xFFFFFFFFFFFFFFFF
    z = (z + 0x9E3779B97F4A7C15) & 0xFFFFFFFFFFFFFFFF
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & 0xFFFFFFFFFFFFFFFF
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & 0xFFFFFFFFFFFFFFFF
    return z ^ (z >> 31)


@dataclass
class IntMph:
    """Hash-and-displace minimal perfect hash over distinct integers.

    Keys go to ``nbuckets`` buckets; largest buckets first, each gets the
    first seed that sends all of its keys to distinct free slots in
    ``[0, n)``.  Single-key buckets store their slot directly.
    """

    n: int
    nbuckets: int
    base: int
    seeds: list[int] = field(repr=False)

    @classmethod
    def build(cls, keys: Sequence[int], rng: random.Random | None = None) -> "IntMph":
        n = len(keys)
        if len(set(keys)) != n:
            raise ValueError("minimal perfect hash keys must be distinct")
        if n == 0:
            return cls(0, 1, 0, [0])
        rng = rng or random.Random(0)
        base = rng.getrandbits(64)
        nbuckets = n
        buckets: list[list[int]] = [[] for _ in range(nbuckets)]
        for k in keys:
            buckets[_mix(k, base) % nbuckets].append(k)
        seeds = [0] * nbuckets
        taken = [False] * n
        order = sorted(range(nbuckets), key=lambda i: -len(buckets[i]))
        free = None
        for bi in order:
            members = buckets[bi]
            if not members:
                break
            if len(members) == 1:
                # singletons take the free slots directly, encoded as -(slot+1)
                if free is None:
                    free = iter([s for s in range(n) if not taken[s]])
                seeds[bi] = -next(free) - 1
                continue
            seed = 1
            while True:
                slots = [_mix(k, base + seed) % n for k in members]
                if len(set(slots)) == len(slots) and not any(taken[s] for s in slots):
                    break
                seed += 1
            for s in slots:
                taken[s] = True
            seeds[bi] = seed
        return cls(n, nbuckets, base, seeds)

    def __call__(self, key: int) -> int:
        if self.n == 0:
            return 0
        seed = self.seeds[_mix(key, self.base) % self.nbuckets]
        if seed < 0:
            return -seed - 1
        return _mix(key, self.base + seed) % self.n


@dataclass
class StringMph:
    """Static string -> payload map that never traps.

    Lookups on strings outside the key set return some stored payload; the
    caller must verify.  An empty map returns ``None``.
    """

    key_count: int
    gamma: int
    width: int
    mph: IntMph
    values: list
    attempts: int = 1

    def lookup_fingerprint(self, fp: int):
        if self.key_count == 0:
            return None
        return self.values[self.mph(fp)]

    def lookup(self, pt: PackedText, start: int, length: int):
        if self.key_count == 0:
            return None
        return self.values[self.mph(poly_hash(pt, start, length, self.gamma, self.width))]


def build_string_mph(
    keys: Sequence[tuple[PackedText, int, int]],
    payloads: Sequence,
    *,
    fingerprints: Callable[[int, int], Sequence[int]] | None = None,
    total_chars: int | None = None,
    rng: random.Random | None = None,
    width: int | None = None,
) -> StringMph:
    """Build a :class:`StringMph` over string handles ``(pt, start, length)``.

    Keys must be distinct strings.  A fresh prime multiplier is drawn until
    the fingerprints are injective over the keys.  ``fingerprints(gamma,
    width)`` may supply all key fingerprints at once (e.g. from
    :func:`factor_hashes`) instead of hashing each key separately.
    """
    rng = rng or random.Random(0x5EED)
    if total_chars is None:
        total_chars = sum(k[2] for k in keys)
    if width is None:
        width = fingerprint_width(total_chars)
    if not keys:
        return StringMph(0, 0, width, IntMph.build([]), [])
    attempts = 0
    while True:
        attempts += 1
        # gamma spans the whole field so products wrap the modulus; a
        # narrow gamma would leave the low bits depending on few characters
        gamma = random_prime(GAMMA_BITS, rng)
        if fingerprints is not None:
            fps = list(fingerprints(gamma, width))
        else:
            fps = [poly_hash(pt, s, ln, gamma, width) for pt, s, ln in keys]
        if len(set(fps)) == len(fps):
            break
    mph = IntMph.build(fps, rng)
    values = [None] * len(fps)
    for fp, payload in zip(fps, payloads):
        values[mph(fp)] = payload
    return StringMph(len(fps), gamma, width, mph, values, attempts)


def mph_lookup(d: StringMph, pt: PackedText, start: int = 0, length: int | None = None):
    if length is None:
        length = pt.length - start
    return d.lookup(pt, start, length)
