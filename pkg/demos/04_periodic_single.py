"""One pattern, periodic windows
=================================

The single-pattern matcher reads windows of length m + h with h = m // 3.
The middle factor q of each window is looked up in a perfect hash of the
pattern's factors. When q occurs periodically in the pattern, occurrences of
q in the window are counted with packed repetition tests rather than checked
one by one.
"""

# %%
from packmatch import build_single, kmp_find_all, pack_text
from packmatch.core import Stats

p = [0, 1] * 10 + [0]  # (ab)^10 a
sm = build_single(p, 2)
print(f"m={sm.m} h={sm.h} factor length={sm.factor_length}")

# %%
# Factor census: (first position, occurrence count, period) per distinct factor.
for run in sm.runs[:5]:
    print(run.triplet)

# %%
text = ([0, 1] * 40 + [1]) * 5
stats = Stats()
got = sm.find_all(pack_text(text, 2), stats)
assert got == kmp_find_all(p, text)
print(f"{len(got)} occurrences, {stats.windows} windows")
