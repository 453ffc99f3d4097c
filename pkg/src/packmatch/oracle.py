"""Textbook matchers used as ground truth and as benchmark baselines.

They work on plain symbol sequences, never on packed text, so that a bug in
the packed layer cannot hide itself behind an equally wrong oracle.
"""

from __future__ import annotations

from collections import deque
from typing import Sequence

from .core import Occurrence, sort_occurrences


def naive_find_all(patterns: Sequence[Sequence[int]], text: Sequence[int]) -> list[Occurrence]:
    text = tuple(text)
    n = len(text)
    out = []
    for pid, pat in enumerate(patterns):
        pat = tuple(pat)
        m = len(pat)
        if m == 0:
            continue
        for s in range(n - m + 1):
            if text[s:s + m] == pat:
                out.append(Occurrence(pid, s, s + m - 1))
    return sort_occurrences(out)


def failure_function(pattern: Sequence[int]) -> list[int]:
    fail = [0] * len(pattern)
    k = 0
    for i in range(1, len(pattern)):
        while k and pattern[i] != pattern[k]:
            k = fail[k - 1]
        if pattern[i] == pattern[k]:
            k += 1
        fail[i] = k
    return fail


def kmp_find_all(pattern: Sequence[int], text: Sequence[int], pattern_id: int = 0) -> list[Occurrence]:
    pattern = list(pattern)
    m = len(pattern)
    if m == 0:
        raise ValueError("KMP needs a non-empty pattern")
    fail = failure_function(pattern)
    out = []
    k = 0
    for i, c in enumerate(text):
        while k and c != pattern[k]:
            k = fail[k - 1]
        if c == pattern[k]:
            k += 1
        if k == m:
            out.append(Occurrence(pattern_id, i - m + 1, i))
            k = fail[k - 1]
    return out


class AcAutomaton:
    """Goto/fail/output Aho-Corasick automaton.

    Node ``v`` corresponds to the pattern prefix ``prefix[v]``; node 0 is the
    empty string.
    """

    def __init__(self, patterns: Sequence[Sequence[int]]):
        if not patterns:
            raise ValueError("Aho-Corasick needs at least one pattern")
        self.patterns = [tuple(p) for p in patterns]
        self.goto: list[dict[int, int]] = [{}]
        self.prefix: list[tuple[int, ...]] = [()]
        self.out: list[list[int]] = [[]]
        for pid, pat in enumerate(self.patterns):
            if not pat:
                raise ValueError("patterns must be non-empty")
            v = 0
            for c in pat:
                nxt = self.goto[v].get(c)
                if nxt is None:
                    nxt = len(self.goto)
                    self.goto[v][c] = nxt
                    self.goto.append({})
                    self.prefix.append(self.prefix[v] + (c,))
                    self.out.append([])
                v = nxt
            self.out[v].append(pid)
        self.fail = [0] * len(self.goto)
        # dictionary link: nearest proper-suffix node with a nonempty output
        self.dict_link = [-1] * len(self.goto)
        queue = deque(self.goto[0].values())
        while queue:
            v = queue.popleft()
            f = self.fail[v]
            self.dict_link[v] = f if self.out[f] else self.dict_link[f]
            for c, u in self.goto[v].items():
                k = f
                while k and c not in self.goto[k]:
                    k = self.fail[k]
                self.fail[u] = self.goto[k].get(c, 0)
                queue.append(u)

    @property
    def node_count(self) -> int:
        return len(self.goto)

    def step(self, v: int, c: int) -> int:
        while v and c not in self.goto[v]:
            v = self.fail[v]
        return self.goto[v].get(c, 0)

    def find_all(self, text: Sequence[int], stats=None) -> list[Occurrence]:
        out = []
        v = 0
        step = self.step
        for i, c in enumerate(text):
            v = step(v, c)
            u = v if self.out[v] else self.dict_link[v]
            while u > 0:
                for pid in self.out[u]:
                    out.append(Occurrence(pid, i - len(self.prefix[u]) + 1, i))
                u = self.dict_link[u]
        if stats is not None:
            stats.transitions += len(text)
        return sort_occurrences(out)

    def state_after(self, chars: Sequence[int]) -> int:
        v = 0
        for c in chars:
            v = self.step(v, c)
        return v


def ac_build(patterns: Sequence[Sequence[int]]) -> AcAutomaton:
    return AcAutomaton(patterns)


def ac_find_all(a: AcAutomaton, text: Sequence[int]) -> list[Occurrence]:
    return a.find_all(text)


def ac_state_after(a: AcAutomaton, chars: Sequence[int]) -> int:
    return a.state_after(chars)
