"""Packing text into machine words
===================================

Each character takes ``max(1, ceil(log2 sigma))`` bits, so a 64-bit word
holds many characters and a single xor compares them all at once.
"""

# %%
from packmatch.bitpack import (
    common_prefix_length,
    compare_equal,
    longest_prefix_repetition,
    pack_text,
    unpack,
)

DNA = {c: i for i, c in enumerate("acgt")}


def enc(s):
    return [DNA[c] for c in s]


# %%
# A DNA string uses two bits per base; 32 bases fit in one word.
pt = pack_text(enc("acgt" * 20), 4)
print(f"{pt.length} chars, {pt.bits_per_char} bits/char, {len(pt.words)} words")
print("first word:", hex(int(pt.words[0])))
assert unpack(pt) == enc("acgt" * 20)

# %%
# Equality and longest common prefix of two substrings are word operations.
a = pack_text(enc("acgtacgtacgtac"), 4)
b = pack_text(enc("acgtacgtaggtac"), 4)
print("equal first 8:", compare_equal(a, 0, 8, b, 0, 8))
print("lcp:", common_prefix_length(a, 0, b, 0, 14))

# %%
# Longest prefix repetition: how many copies of p start s.
p, s = pack_text(enc("ac"), 4), pack_text(enc("acacacg"), 4)
print("copies of 'ac' at the front of 'acacacg':", longest_prefix_repetition(p, s))
