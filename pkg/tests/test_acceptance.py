"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines inline; they
are also repeated in the terminal summary.
"""

import math
import os
import time
import xml.etree.ElementTree as ET

import pytest

from conftest import ACCEPTANCE_LINES
from periodica import bounds
from periodica.closure import CASE_GAP, choicebound_cases, forward_closure, irreducible, q_sequence
from periodica.correlation import all_correlations, correlate, recompose
from periodica.enumeration import (enumerate_gamma, load_a005434, read_gamma_cache, witness,
                                   write_gamma_cache)
from periodica.errors import InvariantViolation
from periodica.periods import Autocorrelation, autocorrelation, period_set
from periodica.svg import render_svg
from periodica.verify import run_lemmas

JOBS = max(1, min(8, os.cpu_count() or 1))


def report(name: str, ok: bool, detail: str = "") -> None:
    line = f"{'PASS' if ok else 'FAIL'} {name}" + (f" ({detail})" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def best_time(fn, repeat=20):
    best = math.inf
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


@pytest.fixture(scope="module")
def gamma_cache_20(tmp_path_factory):
    d = tmp_path_factory.mktemp("gamma20")
    for n in range(1, 21):
        write_gamma_cache(enumerate_gamma(n, jobs=JOBS), d)
    return d


def test_worked_examples():
    s = autocorrelation("abbaabba")
    P = period_set("abbaabba")
    t = correlate("aabbaa", "baabaa")
    exact = str(s) == "10001001" and P.periods == (0, 4, 7) and str(t) == "000100"
    elapsed = best_time(lambda: (autocorrelation("abbaabba"), correlate("aabbaa", "baabaa")))
    report("worked examples", exact and elapsed < 1e-3, f"{elapsed * 1e6:.0f} us")


def test_kappa_oracle_equivalence():
    published = load_a005434()
    start = time.perf_counter()
    mismatches = []
    for n in range(1, 17):
        naive = enumerate_gamma(n, method="naive")
        border = enumerate_gamma(n, method="border")
        if naive.members != border.members:
            mismatches.append(f"n={n}: routes disagree")
        if naive.kappa != published[n - 1]:
            mismatches.append(f"n={n}: {naive.kappa} != {published[n - 1]}")
    elapsed = time.perf_counter() - start
    report("kappa oracle equivalence n=1..16", not mismatches and elapsed < 10,
           f"{elapsed:.2f} s" + (f"; {mismatches[:3]}" if mismatches else ""))


def test_upper_bound_finite_check(gamma_cache_20):
    bad = []
    for n in range(2, 21):
        k = read_gamma_cache(n, gamma_cache_20).kappa
        if not bounds.normalized(k, n) < bounds.new_upper_bound(n):
            bad.append(f"n={n}: normalized")
        if not k <= bounds.counting_bound(n) or not k <= bounds.counting_bound_exact(n):
            bad.append(f"n={n}: counting bound")
    report("upper bound finite check n=2..20", not bad, "; ".join(bad))


def test_irreducible_round_trip(gammas):
    bad = []
    for n in range(1, 17):
        for s in gammas[n]:
            P = s.period_set()
            R = irreducible(P)
            if forward_closure(R.elements, n) != P.periods:
                bad.append(f"{s}: closure")
            if R.k - 1 > math.log2(n):
                bad.append(f"{s}: size")
            try:
                qs = q_sequence(R)
            except InvariantViolation:
                bad.append(f"{s}: no q-sequence")
                continue
            if any(q * 2 ** i > n for i, q in enumerate(qs.qs)):
                bad.append(f"{s}: q bound")
            if CASE_GAP in choicebound_cases(R, qs):
                bad.append(f"{s}: case 3")
    report("irreducible round trip n<=16", not bad, f"{len(bad)} violations")


def test_correlation_structure(gammas):
    bad = []
    start = time.perf_counter()
    for n in range(1, 13):
        brute = all_correlations(n, jobs=JOBS)
        built = {recompose(n, s).bits for j in range(n + 1) for s in gammas[j]}
        if brute != built:
            bad.append(f"n={n}: sets differ")
        if len(brute) != sum(gammas[j].kappa for j in range(n + 1)):
            bad.append(f"n={n}: cardinality")
    elapsed = time.perf_counter() - start
    report("correlation structure n<=12", not bad and elapsed < 60, f"{elapsed:.2f} s {bad}")


def test_witness_soundness(gammas):
    bad = []
    for n in range(1, 13):
        for s in gammas[n]:
            w = witness(s)
            if w is None or autocorrelation(w) != s:
                bad.append(f"{s}: {w}")
    for n in range(1, 11):
        for rest in range(2 ** (n - 1)):
            s = Autocorrelation(n, (rest << 1) | 1)
            if s not in gammas[n] and witness(s) is not None:
                bad.append(f"{s}: witness for invalid")
    report("witness soundness", not bad, f"{len(bad)} mismatches")


def test_lemma_suite():
    # 20000 words alternating binary and ternary, every lemma checked on each
    out = run_lemmas(20000, seed=2024, max_len=64, alphabets=("ab", "abc"))
    bad = {k: len(v) for k, v in out.items() if v}
    report("lemma property suite (20000 words, n<=64)", not bad, str(bad) if bad else "")


@pytest.fixture(scope="module")
def figure_rows(gamma_cache_20):
    return bounds.build_table(500, gamma_cache_20)


def test_figure_new_upper_monotone(figure_rows):
    col = [r.new_upper for r in figure_rows]
    report("figure: new_upper decreasing", all(a > b for a, b in zip(col, col[1:])))


def test_figure_go_constants(figure_rows):
    # 0.72135 and 1.2331 agree with 1/(2 ln 2) and 1/(2 ln 1.5) to their last digit
    lo, hi = 1 / (2 * math.log(2)), 1 / (2 * math.log(1.5))
    ok = all(abs(r.go_lower - lo) < 1e-6 and abs(r.go_upper - hi) < 1e-6 for r in figure_rows)
    ok = ok and abs(lo - 0.72135) < 1e-5 and abs(hi - 1.2331) < 1e-4
    report("figure: go constants", ok, f"go_lower={lo:.7f}, go_upper={hi:.7f}")


def test_figure_rr_below_go(figure_rows):
    bad = [r.n for r in figure_rows if r.rr_lower is not None and not r.rr_lower < r.go_lower]
    report("figure: rr_lower < go_lower for all emitted n", not bad, f"violated at n={bad}" if bad else "")


def test_figure_normalized_bracketed(figure_rows):
    bad = [r.n for r in figure_rows if r.kappa is not None
           and not ((r.rr_lower is None or r.rr_lower <= r.normalized) and r.normalized <= r.new_upper)]
    have = sum(r.kappa is not None for r in figure_rows)
    report("figure: normalized between rr_lower and new_upper", have == 19 and not bad,
           f"{have} cached n, violations {bad}")


def test_figure_svg_well_formed(figure_rows):
    root = ET.fromstring(render_svg(figure_rows).encode())
    report("figure: svg well-formed", root.tag == "{http://www.w3.org/2000/svg}svg")


def test_asymptotic_note(figure_rows):
    text = bounds.table_csv(figure_rows)
    lines = text.splitlines()
    ok = (lines[0] == ",".join(bounds.CSV_HEADER) and len(bounds.read_table_csv(text)) == 499
          and any(ln.startswith("#") and "far from convergence at n = 500" in ln for ln in lines))
    report("asymptotic note in csv", ok)
