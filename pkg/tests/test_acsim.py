from __future__ import annotations

import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from packmatch.acsim import (
    EmptyPatternError,
    build_multi_matcher,
    find_all,
    report_block,
    transition,
)
from packmatch.bitpack import pack_text
from packmatch.core import Occurrence as O
from packmatch.core import Stats
from packmatch.oracle import AcAutomaton, naive_find_all
from packmatch.strorder import surank

from conftest import enc, packed


def test_state_numbering_example():
    mm = build_multi_matcher([enc("ab"), enc("ba")], 4)
    names = {"": 0, "a": 1, "ba": 2, "b": 3, "ab": 4}
    for s, state in names.items():
        assert mm.state(enc(s)) == state
        assert mm.prefix_of_state(state) == enc(s)


def test_transition_examples():
    mm = build_multi_matcher([enc("ab"), enc("ba")], 4)
    assert transition(mm, 0, packed("ab")) == 4
    assert transition(mm, 0, packed("cc")) == 0
    assert transition(mm, mm.state(enc("a")), packed("ba")) == mm.state(enc("ba"))
    with pytest.raises(ValueError):
        transition(mm, 0, packed("abc"))


def test_report_block_examples():
    mm = build_multi_matcher([enc("ab")], 4)
    assert report_block(mm, 0, packed("ab"), 0) == [O(0, 0, 1)]
    state = transition(mm, 0, packed("ab"))
    assert report_block(mm, state, packed("ab"), 2) == [O(0, 2, 3)]
    assert report_block(mm, 0, packed("cc"), 0) == []


def test_find_all_examples():
    assert find_all(build_multi_matcher([enc("ab")], 4), packed("abab")) == [O(0, 0, 1), O(0, 2, 3)]
    assert find_all(build_multi_matcher([enc("aa")], 4), packed("aaaa")) == [O(0, 0, 1), O(0, 1, 2), O(0, 2, 3)]
    assert find_all(build_multi_matcher([enc("a")], 2), packed("aba", 2)) == [O(0, 0, 0), O(0, 2, 2)]


def test_rectangle_count_is_d_times_b():
    mm = build_multi_matcher([enc("ab")], 4)
    assert mm.b == 2 and mm.rect_count == 2


def test_duplicates_and_nested_patterns():
    pats = [enc("ab"), enc("ab"), enc("abab"), enc("b")]
    got = find_all(build_multi_matcher(pats, 4), packed("ababab"))
    assert got == naive_find_all(pats, enc("ababab"))


def test_rejects_empty_pattern():
    with pytest.raises(EmptyPatternError):
        build_multi_matcher([enc("ab"), ()], 4)
    with pytest.raises(ValueError):
        build_multi_matcher([], 4)


def test_t1_and_t3_invariants():
    rng = random.Random(8)
    for _ in range(100):
        pats = [tuple(rng.randrange(3) for _ in range(rng.randint(1, 7))) for _ in range(rng.randint(1, 6))]
        mm = build_multi_matcher(pats, 4)
        prefixes = {p[:k] for p in pats for k in range(len(p) + 1)}
        syms = mm.A.symbols()
        for rank, (s, n) in enumerate(mm.b1.handles):
            x = tuple(syms[s:s + n])
            assert mm.t1[rank] == surank(prefixes, x) == mm.state(x)
        for ids, head, tail in mm.t3:
            for pid in ids:
                assert head + tail == len(pats[pid]) and 1 <= tail <= mm.b


def brute_report(pats, text, pos, u):
    return sorted(
        o for o in naive_find_all(pats, text) if pos <= o.end < pos + u and o.start <= pos
    )


@given(
    st.integers(2, 4).flatmap(
        lambda sigma: st.tuples(
            st.just(sigma),
            st.lists(st.lists(st.integers(0, sigma - 1), min_size=1, max_size=7), min_size=1, max_size=6),
            st.lists(st.integers(0, sigma - 1), max_size=60),
        )
    ),
    st.one_of(st.none(), st.integers(1, 5)),
)
def test_blocks_against_oracles(case, block):
    sigma, pats, text = case
    mm = build_multi_matcher(pats, sigma, block=block)
    b = mm.b
    pt = pack_text(text, sigma)
    ac = AcAutomaton(pats)
    prefixes = {tuple(p[:k]) for p in pats for k in range(len(p) + 1)}
    state = 0
    for pos in range(0, len(text), b):
        u = min(b, len(text) - pos)
        got = sorted(mm.report_block(state, pt, pos, u))
        want = brute_report(pats, text, pos, u)
        if block is None:
            assert got == want
        else:
            assert set(got) <= set(want)
        if u == b:
            state = mm.transition(state, pt, pos)
            node = ac.state_after(text[:pos + b])
            assert state == surank(prefixes, ac.prefix[node])


@given(
    st.lists(st.lists(st.integers(0, 3), min_size=1, max_size=9), min_size=1, max_size=8),
    st.lists(st.integers(0, 3), max_size=120),
)
def test_find_all_and_step_counts(pats, text):
    mm = build_multi_matcher(pats, 4)
    stats = Stats()
    got = mm.find_all(pack_text(text, 4), stats)
    assert got == naive_find_all(pats, text)
    n, b = len(text), mm.b
    blocks = math.ceil(n / b)
    assert stats.report_steps == blocks
    assert stats.transitions == max(0, blocks - 1)
    assert stats.stab_queries <= 2 * blocks


def test_no_occurrence_starts_and_ends_inside_one_block():
    rng = random.Random(21)
    for _ in range(200):
        pats = [tuple(rng.randrange(2) for _ in range(rng.randint(1, 6))) for _ in range(rng.randint(1, 5))]
        b = min(map(len, pats))
        text = [rng.randrange(2) for _ in range(rng.randint(0, 80))]
        for o in naive_find_all(pats, text):
            assert not (o.start % b >= 1 and o.start // b == o.end // b)


def test_space_shape():
    rng = random.Random(13)
    for _ in range(150):
        sigma = rng.choice([2, 4, 16])
        pats = [tuple(rng.randrange(sigma) for _ in range(rng.randint(1, 20))) for _ in range(rng.randint(1, 10))]
        mm = build_multi_matcher(pats, sigma)
        m = mm.m
        sizes = mm.sizes()
        assert sizes["intervals"] <= m + 1
        assert sizes["rectangles"] <= len(pats) * mm.b
        assert sizes["mph_keys"] <= m
