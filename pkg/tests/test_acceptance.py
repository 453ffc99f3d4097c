"""Acceptance gate: one test per criterion, each logging a PASS/FAIL line."""

from __future__ import annotations

import itertools
import math
import random
import time

from packmatch.acsim import MultiMatcher
from packmatch.bitpack import (
    common_prefix_length,
    common_suffix_length,
    compare_equal,
    extract_char,
    longest_prefix_repetition,
    longest_suffix_repetition,
    lsb,
    msb,
    pack_text,
    unpack,
)
from packmatch.core import Stats
from packmatch.difftest import run_suite
from packmatch.oracle import AcAutomaton
from packmatch.single import SingleMatcher
from packmatch.stab import (
    Interval1D,
    LongestPrefixIndex,
    LongestSuffixIndex,
    Rect2D,
    Stab1D,
    Stab2D,
    _check_laminar,
    NonLaminarError,
)
from packmatch.strorder import SortedStrings, is_prefix, is_suffix, surank
from packmatch.tabmulti import TabMultiMatcher, table_entries

from conftest import record

DIFF_CASES = 10_000
DIFF_SECONDS = 300.0


def random_patterns(rng, sigma, d, lo, hi):
    return [tuple(rng.randrange(sigma) for _ in range(rng.randint(lo, hi))) for _ in range(d)]


def planted_text(rng, sigma, pats, n):
    text = [rng.randrange(sigma) for _ in range(n)]
    for _ in range(n // 20):
        p = rng.choice(pats)
        if len(p) <= n:
            s = rng.randrange(n - len(p) + 1)
            text[s:s + len(p)] = p
    return text


def test_differential_correctness():
    t0 = time.perf_counter()
    result = run_suite(seed=20240601, cases=DIFF_CASES, adversarial=True)
    elapsed = time.perf_counter() - t0
    ok = result.ok and result.cases >= DIFF_CASES and elapsed <= DIFF_SECONDS
    counts = ", ".join(f"{e}={n}" for e, n in sorted(result.comparisons.items()))
    record(
        "differential correctness",
        ok,
        f"{result.cases} cases ({counts}), {len(result.mismatches)} mismatches, {elapsed:.0f}s (limit {DIFF_SECONDS:.0f}s)",
    )
    assert result.ok, [str(m) for m in result.mismatches[:5]]
    assert result.cases >= DIFF_CASES
    assert elapsed <= DIFF_SECONDS


def test_transition_oracle():
    rng = random.Random(101)
    boundaries = bad = 0
    for _ in range(1000):
        sigma = rng.choice([2, 4, 16])
        pats = random_patterns(rng, sigma, rng.randint(1, 8), 1, 10)
        text = planted_text(rng, sigma, pats, rng.randint(0, 200))
        mm = MultiMatcher(pats, sigma)
        ac = AcAutomaton(pats)
        prefixes = {p[:k] for p in pats for k in range(len(p) + 1)}
        for k, state in enumerate(mm.states_along(pack_text(text, sigma)), 1):
            node = ac.state_after(text[:k * mm.b])
            boundaries += 1
            bad += state != surank(prefixes, ac.prefix[node])
    record("transition oracle", bad == 0, f"{boundaries} block boundaries over 1000 cases, {bad} disagreements")
    assert bad == 0


def test_step_count_shape():
    rng = random.Random(202)
    bad = 0
    worst = 0.0
    for _ in range(1000):
        sigma = rng.choice([2, 4, 16, 256])
        pats = random_patterns(rng, sigma, rng.randint(1, 16), 1, 64)
        n = rng.randint(0, 2000)
        text = planted_text(rng, sigma, pats, n)
        mm = MultiMatcher(pats, sigma)
        stats = Stats()
        mm.find_all(pack_text(text, sigma), stats)
        blocks = math.ceil(n / mm.b)
        ok = (
            stats.report_steps == blocks
            and stats.transitions == max(0, blocks - 1)
            and stats.stab_queries <= 2 * blocks
        )
        bad += not ok
        if blocks:
            worst = max(worst, stats.stab_queries / blocks)
    record("step-count shape", bad == 0,
           f"1000 cases exact report/transition counts; max stab queries per block {worst:.2f} (limit 2)")
    assert bad == 0


def test_periodic_window_counting():
    rng = random.Random(303)
    windows = bad_count = bad_bound = 0
    while windows < 1000:
        sigma = rng.choice([2, 3, 4])
        root = [rng.randrange(sigma) for _ in range(rng.randint(1, 5))]
        m = rng.randint(3, 64)
        p = (root * 64)[:m]
        if rng.random() < 0.3:
            p[rng.randrange(m)] = rng.randrange(sigma)
        sm = SingleMatcher(p, sigma)
        h = sm.h
        shift = rng.randrange(len(root))
        w = (root * 64)[shift:shift + m + h]
        if len(w) < m + h:
            continue
        for _ in range(rng.choice([0, 0, 1, 2])):
            i = rng.randrange(m + h)
            if not h <= i < m:  # keep q intact, disturb the flanks
                w[i] = rng.randrange(sigma)
        pt = pack_text(w, sigma)
        run = sm._lookup(pt, h)
        if run is None or run.triplet.beta < 2:
            continue
        windows += 1
        _, _, c = sm.count_q_occurrences(pt, 0, run)
        q = w[h:m]
        brute = sum(w[s:s + len(q)] == q for s in range(len(w) - len(q) + 1))
        bad_count += c != brute
        out = sm.match_window(pt, 0)
        bad_bound += len(out) > c - run.triplet.beta + 1
        bad_bound += out != [s for s in range(h + 1) if w[s:s + m] == p]
    ok = bad_count == 0 and bad_bound == 0
    record("periodic window counting", ok,
           f"{windows} periodic windows, {bad_count} count errors, {bad_bound} bound/output violations")
    assert ok


def _naive_rep(p, s):
    i = 0
    while (i + 1) * len(p) <= len(s) and s[i * len(p):(i + 1) * len(p)] == p:
        i += 1
    return i


def _bitpack_case(a, b, i, j, n, pa, pb):
    if compare_equal(pa, i, n, pb, j, n) != (a[i:i + n] == b[j:j + n]):
        return False
    lcp = next((k for k in range(n) if a[i + k] != b[j + k]), n)
    lcs = next((k for k in range(n) if a[i + n - 1 - k] != b[j + n - 1 - k]), n)
    return (common_prefix_length(pa, i, pb, j, n) == lcp
            and common_suffix_length(pa, i + n, pb, j + n, n) == lcs)


def component_bitpack() -> tuple[bool, str]:
    errors = 0
    for sigma in (1, 2, 3, 4):
        for n in range(9):
            for s in itertools.product(range(sigma), repeat=n):
                errors += unpack(pack_text(s, sigma)) != list(s)
    for x in range(1, 1 << 16):
        errors += msb(x) != x.bit_length() - 1 or lsb(x) != (x & -x).bit_length() - 1
    binary = [list(s) for n in range(6) for s in itertools.product(range(2), repeat=n)]
    packed = [pack_text(s, 2) for s in binary]
    for (a, pa), (b, pb) in itertools.product(zip(binary, packed), repeat=2):
        n = min(len(a), len(b))
        errors += not _bitpack_case(a, b, 0, 0, n, pa, pb)
    for p, pp in zip(binary[1:15], packed[1:15]):  # |p| <= 3
        for s in (list(t) for n in range(11) for t in itertools.product(range(2), repeat=n)):
            ps = pack_text(s, 2)
            errors += longest_prefix_repetition(pp, ps) != _naive_rep(p, s)
            errors += longest_suffix_repetition(pp, ps) != _naive_rep(p[::-1], s[::-1])
    rng = random.Random(404)
    for _ in range(100_000):
        sigma = rng.choice((2, 3, 4, 5, 16, 200, 256))
        if rng.random() < 0.5:
            p = [rng.randrange(sigma) for _ in range(rng.randint(1, 12))]
            s = p * rng.randint(0, 20) + [rng.randrange(sigma) for _ in range(rng.randint(0, 3))]
            if s and rng.random() < 0.5:
                s[rng.randrange(len(s))] = rng.randrange(sigma)
            pp, ps = pack_text(p, sigma), pack_text(s, sigma)
            errors += longest_prefix_repetition(pp, ps) != _naive_rep(p, s)
            errors += longest_suffix_repetition(pp, ps) != _naive_rep(p[::-1], s[::-1])
            if s:
                k = rng.randrange(len(s))
                errors += extract_char(ps, k) != s[k]
        else:
            a = [rng.randrange(sigma) for _ in range(rng.randint(0, 90))]
            b = list(a) if rng.random() < 0.5 else [rng.randrange(sigma) for _ in range(rng.randint(0, 90))]
            if b and rng.random() < 0.5:
                b[rng.randrange(len(b))] = rng.randrange(sigma)
            n = rng.randint(0, min(len(a), len(b)))
            i, j = rng.randint(0, len(a) - n), rng.randint(0, len(b) - n)
            errors += not _bitpack_case(a, b, i, j, n, pack_text(a, sigma), pack_text(b, sigma))
    return errors == 0, f"bitpack {errors} errors (exhaustive small + 1e5 random)"


def _lpi_agrees(got, ordered, fits) -> bool:
    if not fits:
        return got is None
    best = max(fits, key=len)
    return got is not None and (got.rank, got.length) == (ordered.index(best), len(best))


def component_stab() -> tuple[bool, str]:
    errors = families = 0
    universe = [(lo, hi) for lo in range(5) for hi in range(lo, 5)]
    for k in range(7):
        for combo in itertools.combinations(universe, k):
            ivs = [Interval1D(lo, hi, i) for i, (lo, hi) in enumerate(combo)]
            try:
                _check_laminar(ivs)
            except NonLaminarError:
                continue
            families += 1
            s = Stab1D(ivs, check=False)
            for x in range(-1, 6):
                hits = [iv for iv in ivs if iv.lo <= x <= iv.hi]
                want = min(hits, key=lambda iv: iv.hi - iv.lo).id if hits else None
                errors += s.query(x) != want
    rng = random.Random(505)
    for _ in range(1000):
        rects = []
        for i in range(rng.randint(0, 30)):
            x, y = rng.randint(0, 40), rng.randint(0, 40)
            rects.append(Rect2D(x, x + rng.randint(0, 15), y, y + rng.randint(0, 15), i))
        s = Stab2D(rects)
        for _ in range(10):
            x, y = rng.randint(-1, 56), rng.randint(-1, 56)
            want = sorted(r.id for r in rects if r.x_lo <= x <= r.x_hi and r.y_lo <= y <= r.y_hi)
            errors += sorted(s.query(x, y)) != want
    for _ in range(500):
        sigma = rng.choice((2, 4, 16))
        strings = [tuple(rng.randrange(sigma) for _ in range(rng.randint(1, 10))) for _ in range(rng.randint(1, 15))]
        flat, handles = [], []
        for t in strings:
            handles.append((len(flat), len(t)))
            flat.extend(t)
        store = pack_text(flat, sigma)
        lpi, lsi = LongestPrefixIndex(store, handles), LongestSuffixIndex(store, handles)
        pre, suf = sorted(set(strings)), sorted(set(strings), key=lambda t: t[::-1])
        for _ in range(10):
            x = tuple(rng.randrange(sigma) for _ in range(rng.randint(1, 12)))
            if rng.random() < 0.5:
                x = rng.choice(strings) + x[: rng.randint(0, 3)]
            got = lpi.query(pack_text(x, sigma))
            errors += not _lpi_agrees(got, pre, [t for t in pre if is_prefix(t, x)])
            if rng.random() < 0.5:
                x = x[-rng.randint(0, 3):] + rng.choice(strings) if x else rng.choice(strings)
            got = lsi.query(pack_text(x, sigma))
            errors += not _lpi_agrees(got, suf, [t for t in suf if is_suffix(t, x)])
    return errors == 0, f"stab {errors} errors ({families} laminar families <= 6 intervals, 1000 rectangle sets, 500 string sets)"


def component_rank_interval() -> tuple[bool, str]:
    universe = [s for n in range(1, 4) for s in itertools.product(range(2), repeat=n)]
    queries = [()] + universe
    errors = sets = 0
    for k in range(1, 9):
        for members in itertools.combinations(universe, k):
            sets += 1
            for suffix, has in ((False, is_prefix), (True, is_suffix)):
                ss = SortedStrings(members, suffix=suffix, sigma=2)
                for x in queries:
                    r, c = ss.rank(x), ss.count(x)
                    hits = [i for i, s in enumerate(ss.items) if has(x, s)]
                    errors += hits != list(range(r, r + c))
    return errors == 0, f"rank intervals: {errors} errors over {sets} sets (|X| <= 8)"


def test_component_oracles():
    verdicts = [component_bitpack(), component_stab(), component_rank_interval()]
    ok = all(v for v, _ in verdicts)
    record("component oracles", ok, "; ".join(d for _, d in verdicts))
    assert ok


def test_space_shape():
    rng = random.Random(606)
    worst_c = 0.0
    bad = 0
    for _ in range(1000):
        sigma = rng.choice([2, 4, 16, 256])
        pats = random_patterns(rng, sigma, rng.randint(1, 16), 1, 64)
        mm = MultiMatcher(pats, sigma)
        sizes = mm.sizes()
        m = mm.m
        worst_c = max(worst_c, sizes["intervals"] / (m + 1))
        bad += sizes["intervals"] > m + 1 or sizes["rectangles"] > len(pats) * mm.b or sizes["mph_keys"] > m
    tab_bad = 0
    for sigma, alpha in [(2, 2), (2, 9), (3, 5), (4, 6), (16, 3), (256, 2)]:
        tm = TabMultiMatcher([(0, 1)], sigma, alpha)
        tab_bad += tm.entry_count != sum(sigma**u for u in range(1, alpha)) or tm.entry_count != table_entries(sigma, alpha)
    ok = bad == 0 and tab_bad == 0 and worst_c <= 1
    record("space shape", ok,
           f"1000 matchers, measured interval constant C={worst_c:.3f}; {bad} size violations; tabmulti entry counts exact ({tab_bad} off)")
    assert ok


def test_benchmark_counters():
    # reduced scale; the full 10^7-character run goes through `packmatch bench`
    rng = random.Random(707)
    n, sigma = 200_000, 4
    text = [rng.randrange(sigma) for _ in range(n)]
    pats = [tuple(text[s:s + 32 + i]) for i, s in enumerate(rng.sample(range(n - 64), 8))]
    mm, ac = MultiMatcher(pats, sigma), AcAutomaton(pats)
    pt = pack_text(text, sigma)
    s_mm, s_ac = Stats(), Stats()
    t0 = time.perf_counter()
    got = mm.find_all(pt, s_mm)
    t1 = time.perf_counter()
    want = ac.find_all(text, s_ac)
    t2 = time.perf_counter()
    b = mm.b
    ops_mm = s_mm.transitions + s_mm.report_steps
    ratio = s_ac.transitions / max(1, s_mm.transitions)
    ok = got == want and s_mm.transitions == math.ceil(n / b) - 1 and s_ac.transitions == n and ratio >= b - 1e-9 * b
    record(
        "benchmark counters",
        ok,
        f"n={n}, b={b}: transitions acsim={s_mm.transitions} vs AC={s_ac.transitions} (factor {ratio:.2f}); "
        f"acsim block ops {ops_mm}; wall-clock acsim {n / (t1 - t0):.0f} chars/s, AC {n / (t2 - t1):.0f} chars/s (informational)",
    )
    assert ok
