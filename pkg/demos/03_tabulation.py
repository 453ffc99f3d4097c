"""Short patterns by table lookup
==================================

Patterns shorter than the block length alpha cannot be found by the block
matcher alone. Every string of length below alpha is enumerated once and its
occurrence list stored, so each block needs a single table lookup.
"""

# %%
from packmatch import build_tabulated, naive_find_all, pack_text
from packmatch.tabmulti import alpha_for_budget, string_code, table_entries

# %%
# Table size grows as sigma^(alpha-1); the budget bounds alpha.
for sigma in (2, 4, 16):
    a = alpha_for_budget(1 << 20, sigma)
    print(f"sigma={sigma}: alpha={a} fits 1 MiB ({table_entries(sigma, a)} entries)")

# %%
pats = [(0, 1), (1,)]  # "ab", "b"
tm = build_tabulated(pats, 2, 4)
print("entries:", tm.entry_count)
print("occurrences inside 'bab':", sorted(tm.query_short(3, string_code((1, 0, 1), 2))))

# %%
text = [0, 1, 1, 0, 1, 0, 0, 1]
assert tm.find_all(pack_text(text, 2)) == naive_find_all(pats, text)
print(tm.find_all(pack_text(text, 2)))
