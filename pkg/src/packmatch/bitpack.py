"""Packed strings and word-level primitives.

Characters are stored ``bits_per_char`` bits apiece, contiguously, in 64-bit
words.  Bit order is little endian: character ``i`` occupies bits
``[i*bpc, (i+1)*bpc)`` of the conceptual bit array, and bit ``k`` of that
array is bit ``k % 64`` of word ``k // 64``.  A character may straddle two
words when 64 is not a multiple of ``bpc``.

Every multi-character operation here works on whole words (read, xor,
lsb/msb) rather than looping over characters, so its cost is proportional
to ``len * bpc / WORD_BITS``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

WORD_BITS = 64
WORD_MASK = (1 << WORD_BITS) - 1


class InvalidSymbolError(ValueError):
    """A symbol code is negative or not below the alphabet size."""


def bits_for_sigma(sigma: int) -> int:
    """Bits per character for an alphabet of ``sigma`` symbols (at least 1)."""
    if sigma < 1:
        raise ValueError(f"alphabet size must be positive, got {sigma}")
    return max(1, (sigma - 1).bit_length())


def chars_per_word(sigma: int) -> int:
    """How many whole characters fit in one machine word."""
    return WORD_BITS // bits_for_sigma(sigma)


@dataclass(frozen=True)
class PackedText:
    length: int
    sigma: int
    bits_per_char: int
    words: tuple[int, ...]

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, i: int) -> int:
        return extract_char(self, i)

    def symbols(self) -> list[int]:
        return unpack(self)

    def __repr__(self) -> str:
        head = self.symbols()[:16]
        more = "..." if self.length > 16 else ""
        return f"PackedText(len={self.length}, sigma={self.sigma}, {head}{more})"


def pack_text(symbols: Sequence[int] | np.ndarray, sigma: int) -> PackedText:
    """Pack a sequence of symbol codes, each in ``[0, sigma)``."""
    bpc = bits_for_sigma(sigma)
    codes = np.asarray(symbols, dtype=np.int64).ravel()
    n = int(codes.size)
    if n == 0:
        return PackedText(0, sigma, bpc, ())
    if int(codes.min()) < 0 or int(codes.max()) >= sigma:
        bad = int(codes.max()) if int(codes.max()) >= sigma else int(codes.min())
        raise InvalidSymbolError(f"symbol {bad} outside alphabet of size {sigma}")
    codes = codes.astype(np.uint64)
    nwords = -(-n * bpc // WORD_BITS)

    if WORD_BITS % bpc == 0:
        per = WORD_BITS // bpc
        padded = np.zeros(nwords * per, dtype=np.uint64)
        padded[:n] = codes
        shifts = (np.arange(per, dtype=np.uint64) * np.uint64(bpc))
        lanes = padded.reshape(nwords, per) << shifts
        words = np.bitwise_or.reduce(lanes, axis=1)
    else:
        pos = np.arange(n, dtype=np.uint64) * np.uint64(bpc)
        widx = (pos >> np.uint64(6)).astype(np.int64)
        off = pos & np.uint64(63)
        words = np.zeros(nwords, dtype=np.uint64)
        np.bitwise_or.at(words, widx, codes << off)
        spill = (off + np.uint64(bpc)) > np.uint64(WORD_BITS)
        if spill.any():
            np.bitwise_or.at(
                words, widx[spill] + 1, codes[spill] >> (np.uint64(WORD_BITS) - off[spill])
            )
    return PackedText(n, sigma, bpc, tuple(words.tolist()))


def unpack(pt: PackedText) -> list[int]:
    return [extract_char(pt, i) for i in range(pt.length)]


def extract_char(pt: PackedText, i: int) -> int:
    """Return the code at position ``i``, reading at most two words."""
    if not 0 <= i < pt.length:
        raise IndexError(f"character index {i} out of range for length {pt.length}")
    bpc = pt.bits_per_char
    first = i * bpc
    last = first + bpc - 1
    w0 = first // WORD_BITS
    w1 = last // WORD_BITS
    off = first % WORD_BITS
    if w0 == w1:
        return (pt.words[w0] >> off) & ((1 << bpc) - 1)
    low = pt.words[w0] >> off
    high = pt.words[w1] & ((1 << (bpc - (WORD_BITS - off))) - 1)
    return low | (high << (WORD_BITS - off))


def read_bits(pt: PackedText, bitpos: int, nbits: int) -> int:
    """Read ``nbits <= WORD_BITS`` bits starting at absolute bit ``bitpos``."""
    k, off = divmod(bitpos, WORD_BITS)
    words = pt.words
    val = words[k] >> off
    if off + nbits > WORD_BITS and k + 1 < len(words):
        val |= words[k + 1] << (WORD_BITS - off)
    return val & ((1 << nbits) - 1)


def read_chars(pt: PackedText, start: int, count: int) -> int:
    """The packed bits of ``pt[start:start+count]`` as one integer.

    Character ``start`` lands in the least significant bits, so for a
    power-of-two alphabet the result is the base-sigma little-endian code
    of the substring.
    """
    if count <= 0:
        return 0
    bpc = pt.bits_per_char
    total = count * bpc
    base = start * bpc
    if total <= WORD_BITS:
        return read_bits(pt, base, total)
    out = 0
    done = 0
    while done < total:
        take = min(WORD_BITS, total - done)
        out |= read_bits(pt, base + done, take) << done
        done += take
    return out


def substring(pt: PackedText, start: int, length: int) -> PackedText:
    """A fresh packed copy of ``pt[start:start+length]`` built word by word."""
    _check_range(pt, start, length)
    bpc = pt.bits_per_char
    total = length * bpc
    base = start * bpc
    words = []
    for done in range(0, total, WORD_BITS):
        words.append(read_bits(pt, base + done, min(WORD_BITS, total - done)))
    return PackedText(length, pt.sigma, bpc, tuple(words))


def concat(parts: Sequence[PackedText], sigma: int) -> PackedText:
    syms: list[int] = []
    for part in parts:
        syms.extend(unpack(part))
    return pack_text(syms, sigma)


def _check_range(pt: PackedText, start: int, length: int) -> None:
    if start < 0 or length < 0 or start + length > pt.length:
        raise IndexError(
            f"range [{start}, {start + length}) out of bounds for length {pt.length}"
        )


def _check_compatible(a: PackedText, b: PackedText) -> None:
    if a.bits_per_char != b.bits_per_char:
        raise ValueError(
            f"packed widths differ: {a.bits_per_char} vs {b.bits_per_char} bits per char"
        )


def compare_equal(
    a: PackedText, a_start: int, a_len: int, b: PackedText, b_start: int, b_len: int
) -> bool:
    """Word-parallel equality of ``a[a_start:+a_len]`` and ``b[b_start:+b_len]``."""
    _check_range(a, a_start, a_len)
    _check_range(b, b_start, b_len)
    if a_len != b_len:
        raise ValueError(f"length mismatch: {a_len} vs {b_len}")
    _check_compatible(a, b)
    bpc = a.bits_per_char
    total = a_len * bpc
    abase = a_start * bpc
    bbase = b_start * bpc
    for done in range(0, total, WORD_BITS):
        take = min(WORD_BITS, total - done)
        if read_bits(a, abase + done, take) != read_bits(b, bbase + done, take):
            return False
    return True


def common_prefix_length(
    a: PackedText, a_start: int, b: PackedText, b_start: int, limit: int
) -> int:
    """Length of the longest common prefix of ``a[a_start:]`` and ``b[b_start:]``,
    capped at ``limit`` characters; first mismatch located by xor + lsb."""
    bpc = a.bits_per_char
    total = limit * bpc
    abase = a_start * bpc
    bbase = b_start * bpc
    for done in range(0, total, WORD_BITS):
        take = min(WORD_BITS, total - done)
        diff = read_bits(a, abase + done, take) ^ read_bits(b, bbase + done, take)
        if diff:
            return (done + lsb(diff)) // bpc
    return limit


def common_suffix_length(
    a: PackedText, a_end: int, b: PackedText, b_end: int, limit: int
) -> int:
    """Length of the longest common suffix of ``a[:a_end]`` and ``b[:b_end]``,
    capped at ``limit``; last mismatch located by xor + msb."""
    bpc = a.bits_per_char
    total = limit * bpc
    aend = a_end * bpc
    bend = b_end * bpc
    done = 0
    while done < total:
        take = min(WORD_BITS, total - done)
        lo = total - done - take  # bit offset of this chunk inside the compared span
        diff = read_bits(a, aend - total + lo, take) ^ read_bits(b, bend - total + lo, take)
        if diff:
            mismatch_char = (lo + msb(diff)) // bpc
            return limit - 1 - mismatch_char
        done += take
    return limit


def msb(x: int) -> int:
    """Index of the most significant set bit (bit 0 is least significant)."""
    if x <= 0:
        raise ValueError("msb of a word with no set bit")
    return x.bit_length() - 1


def lsb(x: int) -> int:
    """Index of the least significant set bit."""
    if x <= 0:
        raise ValueError("lsb of a word with no set bit")
    return (x & -x).bit_length() - 1


def _repeat_bits(pattern_bits: int, width: int, times: int) -> int:
    out = 0
    for k in range(times):
        out |= pattern_bits << (k * width)
    return out


def longest_prefix_repetition(p: PackedText, s: PackedText) -> int:
    """Largest ``i`` such that ``p`` repeated ``i`` times is a prefix of ``s``.

    Returns 0 when ``p`` is longer than ``s``.
    """
    m, n = p.length, s.length
    if m == 0:
        raise ValueError("repetition of an empty string is unbounded")
    _check_compatible(p, s)
    if m > n:
        return 0
    bpc = p.bits_per_char
    if 2 * m * bpc >= WORD_BITS:
        i = 0
        while (i + 1) * m <= n and compare_equal(s, i * m, m, p, 0, m):
            i += 1
        return i

    k = WORD_BITS // (m * bpc)
    block = k * m
    block_bits = block * bpc
    rep = _repeat_bits(read_chars(p, 0, m), m * bpc, k)
    full = n // block
    j = 0
    while j < full:
        diff = read_bits(s, j * block_bits, block_bits) ^ rep
        if diff:
            return j * k + (lsb(diff) // bpc) // m
        j += 1
    rest = n - full * block
    if rest == 0:
        return full * k
    diff = (read_bits(s, full * block_bits, rest * bpc) ^ rep) & ((1 << (rest * bpc)) - 1)
    matched = rest if diff == 0 else lsb(diff) // bpc
    return full * k + matched // m


def longest_suffix_repetition(p: PackedText, s: PackedText) -> int:
    """Largest ``i`` such that ``p`` repeated ``i`` times is a suffix of ``s``."""
    m, n = p.length, s.length
    if m == 0:
        raise ValueError("repetition of an empty string is unbounded")
    _check_compatible(p, s)
    if m > n:
        return 0
    bpc = p.bits_per_char
    if 2 * m * bpc >= WORD_BITS:
        i = 0
        while (i + 1) * m <= n and compare_equal(s, n - (i + 1) * m, m, p, 0, m):
            i += 1
        return i

    k = WORD_BITS // (m * bpc)
    block = k * m
    block_bits = block * bpc
    rep = _repeat_bits(read_chars(p, 0, m), m * bpc, k)
    full = n // block
    j = 0
    while j < full:
        start = n - (j + 1) * block
        diff = read_bits(s, start * bpc, block_bits) ^ rep
        if diff:
            matched = block - 1 - msb(diff) // bpc
            return j * k + matched // m
        j += 1
    rest = n - full * block
    if rest == 0:
        return full * k
    # the last `rest` characters of p^k line up with s[0:rest]
    tail = rep >> ((block - rest) * bpc)
    diff = read_bits(s, 0, rest * bpc) ^ tail
    matched = rest if diff == 0 else rest - 1 - msb(diff) // bpc
    return full * k + matched // m
