"""Exact string matching on packed text: multi-pattern block-simulated
Aho-Corasick, tabulated short-pattern variants and a periodicity-based
single-pattern matcher, with textbook oracles for checking them."""

from .acsim import MultiMatcher, build_multi_matcher, find_all
from .bitpack import PackedText, pack_text, unpack
from .core import Occurrence, Stats
from .oracle import AcAutomaton, kmp_find_all, naive_find_all
from .single import SingleMatcher, TabSingleMatcher, build_single, build_single_tab
from .tabmulti import BudgetError, TabMultiMatcher, build_tabulated

__all__ = [
    "AcAutomaton",
    "BudgetError",
    "MultiMatcher",
    "Occurrence",
    "PackedText",
    "SingleMatcher",
    "Stats",
    "TabMultiMatcher",
    "TabSingleMatcher",
    "build_multi_matcher",
    "build_single",
    "build_single_tab",
    "build_tabulated",
    "find_all",
    "kmp_find_all",
    "naive_find_all",
    "pack_text",
    "unpack",
]

__version__ = "0.1.0"
