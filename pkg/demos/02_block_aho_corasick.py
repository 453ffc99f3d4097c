"""Aho-Corasick one block at a time
====================================

The multi-pattern matcher advances by ``b`` characters per step instead of
one. Each step is a constant number of lookups in small stabbing structures,
so a text of length n costs ceil(n/b) - 1 transitions instead of n.
"""

# %%
import random

from packmatch import AcAutomaton, MultiMatcher, Stats, pack_text

rng = random.Random(0)
patterns = [(0, 1), (1, 0)]  # "ab", "ba"
mm = MultiMatcher(patterns, 4)

# %%
# States are the distinct pattern prefixes, numbered by suffix order.
for state in range(mm.state_count):
    print(state, mm.prefix_of_state(state))

# %%
# Sizes stay linear in the total pattern length m.
print(mm.sizes())

# %%
# On a longer alphabet and text the step counter drops by the block length.
sigma = 4
text = [rng.randrange(sigma) for _ in range(50_000)]
pats = [tuple(text[s:s + 32]) for s in rng.sample(range(len(text) - 32), 8)]
mm = MultiMatcher(pats, sigma)
st_block, st_char = Stats(), Stats()
got = mm.find_all(pack_text(text, sigma), st_block)
want = AcAutomaton(pats).find_all(text, st_char)
assert got == want
print(f"b = {mm.b}")
print(f"block transitions {st_block.transitions}, char transitions {st_char.transitions}")
print(f"occurrences: {len(got)}")
