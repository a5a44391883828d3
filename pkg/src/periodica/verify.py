"""Invariant suites over enumerated Γ_n and over random words.

Every check returns a list of human-readable violations; an empty list means
the invariant held on every instance examined.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from math import gcd, log2

from . import bounds
from .closure import (CASE_GAP, choicebound_cases, forward_closure, irreducible,
                      q_sequence)
from .correlation import all_correlations, recompose
from .enumeration import GammaSet, enumerate_gamma, gamma_path, load_a005434, read_gamma_cache
from .errors import InvariantViolation
from .periods import (autocorrelation, fine_wilf_applies, is_period, period_set,
                      periods_naive, suffix_autocorrelation)


def load_gammas(n_max: int, gamma_dir=None, jobs: int = 1, max_n: int | None = None) -> dict[int, GammaSet]:
    """Γ_0..Γ_{n_max}, read from cache files where present and enumerated otherwise.

    A malformed cache raises :class:`periodica.errors.CacheError`.
    """
    from .enumeration import MAX_N

    out = {}
    for n in range(0, n_max + 1):
        if gamma_dir is not None and gamma_path(n, gamma_dir).exists():
            out[n] = read_gamma_cache(n, gamma_dir)
        else:
            out[n] = enumerate_gamma(n, jobs=jobs, max_n=MAX_N if max_n is None else max_n)
    return out


# checks over Γ_n

def check_roundtrip(gammas: dict[int, GammaSet]) -> list[str]:
    bad = []
    for n, gs in gammas.items():
        if n < 1:
            continue
        for s in gs:
            P = s.period_set()
            R = irreducible(P)
            if forward_closure(R.elements, n) != P.periods:
                bad.append(f"n={n} {s}: FC(R) != P for R={R}")
                continue
            for a in R.elements:
                rest = [x for x in R.elements if x != a]
                if forward_closure(rest, n) == P.periods:
                    bad.append(f"n={n} {s}: R={R} not minimal, {a} is redundant")
    return bad


def check_size_bound(gammas: dict[int, GammaSet]) -> list[str]:
    bad = []
    for n, gs in gammas.items():
        if n < 1:
            continue
        for s in gs:
            R = irreducible(s.period_set())
            if R.k > log2(n):
                bad.append(f"n={n} {s}: k={R.k} > log2(n)")
    return bad


def check_q_sequence(gammas: dict[int, GammaSet]) -> list[str]:
    bad = []
    for n, gs in gammas.items():
        if n < 1:
            continue
        for s in gs:
            R = irreducible(s.period_set())
            try:
                qs = q_sequence(R)
            except InvariantViolation as e:
                bad.append(f"n={n} {s}: {e}")
                continue
            for i, (a, q) in enumerate(qs.entries):
                closed = set(forward_closure(R.elements[: i + 1], n))
                if not (1 <= q <= n - a and q * 2 ** i <= n):
                    bad.append(f"n={n} {s}: q_{i}={q} out of range")
                if not (a + q == n or a + q in closed):
                    bad.append(f"n={n} {s}: a_{i}+q_{i}={a + q} neither n nor in FC")
    return bad


def check_no_case3(gammas: dict[int, GammaSet]) -> list[str]:
    bad = []
    for n, gs in gammas.items():
        if n < 1:
            continue
        for s in gs:
            R = irreducible(s.period_set())
            cases = choicebound_cases(R, q_sequence(R))
            if CASE_GAP in cases:
                bad.append(f"n={n} {s}: case 3 at {[i for i, c in enumerate(cases) if c == CASE_GAP]}")
    return bad


def check_suffix_closure(gammas: dict[int, GammaSet]) -> list[str]:
    bad = []
    for n, gs in gammas.items():
        for s in gs:
            for i in s.indices():
                tail = suffix_autocorrelation(s, i)
                if tail.n in gammas and tail not in gammas[tail.n].members:
                    bad.append(f"n={n} {s}: slice at {i} = {tail} not in Γ_{tail.n}")
    return bad


def check_kappa_bounds(gammas: dict[int, GammaSet]) -> list[str]:
    bad = []
    for n, gs in gammas.items():
        if n < 2:
            continue
        k = gs.kappa
        if not k <= bounds.counting_bound_exact(n):
            bad.append(f"n={n}: κ={k} exceeds counting bound {bounds.counting_bound(n)}")
        if not math.log(k) <= bounds.log_closed_form_bound(n):
            bad.append(f"n={n}: ln κ exceeds closed-form bound")
        if not bounds.normalized(k, n) <= bounds.new_upper_bound(n):
            bad.append(f"n={n}: normalized {bounds.normalized(k, n)} > new upper bound")
    return bad


def check_fixture(gammas: dict[int, GammaSet]) -> list[str]:
    published = load_a005434()
    bad = []
    for n, gs in gammas.items():
        if 1 <= n <= len(published) and gs.kappa != published[n - 1]:
            bad.append(f"n={n}: κ={gs.kappa} but the published value is {published[n - 1]}")
    return bad


def check_correlations(gammas: dict[int, GammaSet], limit: int = 12, jobs: int = 1) -> list[str]:
    bad = []
    for n in range(1, min(limit, max(gammas)) + 1):
        brute = all_correlations(n, jobs=jobs)
        built = {recompose(n, s).bits for j in range(n + 1) for s in gammas[j].members}
        if brute != built:
            bad.append(f"n={n}: brute-force correlations differ from 0^(n-j)Γ_j "
                       f"({len(brute - built)} extra, {len(built - brute)} missing)")
        total = sum(gammas[j].kappa for j in range(n + 1))
        if len(brute) != total:
            bad.append(f"n={n}: δ_n={len(brute)} but Σκ_j={total}")
    return bad


# random-word lemma checks

def random_word(rng: random.Random, n: int, alphabet: str = "ab") -> str:
    """Random word biased towards periodic structure so period lemmas get exercised."""
    mode = rng.random()
    if mode < 0.3:
        return "".join(rng.choice(alphabet) for _ in range(n))
    if mode < 0.8:
        root = "".join(rng.choice(alphabet) for _ in range(rng.randint(1, max(1, n // 2))))
        w = (root * (n // len(root) + 1))[:n]
        if rng.random() < 0.3:
            i = rng.randrange(n)
            w = w[:i] + rng.choice(alphabet) + w[i + 1:]
        return w
    if n < 2:
        return "".join(rng.choice(alphabet) for _ in range(n))
    # x y x gives bordered words with sparse period sets
    k = rng.randint(1, n // 2)
    x = "".join(rng.choice(alphabet) for _ in range(k))
    y = "".join(rng.choice(alphabet) for _ in range(n - 2 * k))
    return x + y + x


def lemma_multiply(u: str) -> list[str]:
    n, P = len(u), set(periods_naive(u))
    return [f"{u!r}: {p} period but {k * p} not" for p in P if p
            for k in range(n // p + 1) if k * p < n and k * p not in P]


def lemma_add(u: str) -> list[str]:
    n, P = len(u), set(periods_naive(u))
    bad = []
    for p in P:
        w = u[p:]
        for q in periods_naive(w)[1:]:
            for k in range((n - p - 1) // q + 1):
                if p + k * q not in P:
                    bad.append(f"{u!r}: p={p}, q={q} of suffix, {p + k * q} not a period")
    return bad


def lemma_subtract(u: str) -> list[str]:
    n, P = len(u), sorted(periods_naive(u))
    bad = []
    for p in P:
        for q in P:
            if q > p:
                break
            pre, suf = u[: n - q], u[q:]
            if not (is_period(pre, p - q) and is_period(suf, p - q)):
                bad.append(f"{u!r}: p={p}, q={q}: {p - q} not a period of prefix/suffix")
    return bad


def lemma_divide(u: str) -> list[str]:
    """A window of length p with period r | p is enough; longer windows contain one."""
    n, P = len(u), set(periods_naive(u))
    bad = []
    for p in P:
        if p == 0:
            continue
        for r in range(1, p):
            if p % r or r in P:
                continue
            for i in range(n - p + 1):
                if is_period(u[i:i + p], r):
                    bad.append(f"{u!r}: u[{i}..{i + p - 1}] has period {r} | {p} but {r} not a period")
                    break
    return bad


def lemma_fine_wilf(u: str) -> list[str]:
    n, P = len(u), set(periods_naive(u))
    return [f"{u!r}: p={p}, q={q} but gcd {gcd(p, q)} not a period"
            for p in P for q in P if fine_wilf_applies(n, p, q) and gcd(p, q) not in P]


def lemma_closed(u: str) -> list[str]:
    s = autocorrelation(u)
    return [f"{u!r}: slice at {i} != autocorrelation of suffix"
            for i in s.indices() if suffix_autocorrelation(s, i) != autocorrelation(u[i:])]


def lemma_forward_propagation(u: str) -> list[str]:
    n, P = len(u), sorted(period_set(u).periods)
    Ps = set(P)
    bad = []
    for a, p in enumerate(P):
        for q in P[a + 1:]:
            for r in range(q, n, q - p):
                if r not in Ps:
                    bad.append(f"{u!r}: p={p}, q={q}: {r} not a period")
    return bad


def lemma_two_routes(u: str) -> list[str]:
    ref = periods_naive(u)
    got = list(period_set(u, method="border").periods)
    return [] if ref == got else [f"{u!r}: border {got} != naive {ref}"]


LEMMAS = {
    "multiply": lemma_multiply,
    "add": lemma_add,
    "subtract": lemma_subtract,
    "divide": lemma_divide,
    "fine_wilf": lemma_fine_wilf,
    "closed": lemma_closed,
    "forward_propagation": lemma_forward_propagation,
    "period_routes_agree": lemma_two_routes,
}


def run_lemmas(count: int, seed: int = 0, max_len: int = 64, alphabets=("ab", "abc")) -> dict[str, list[str]]:
    rng = random.Random(seed)
    out = {name: [] for name in LEMMAS}
    for t in range(count):
        alphabet = alphabets[t % len(alphabets)]
        u = random_word(rng, rng.randint(1, max_len), alphabet)
        for name, fn in LEMMAS.items():
            out[name].extend(fn(u))
    return out


@dataclass
class SuiteResult:
    name: str
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def run_all(n_max: int, gamma_dir=None, jobs: int = 1, words: int = 2000, seed: int = 0,
            correlation_limit: int = 12) -> list[SuiteResult]:
    gammas = load_gammas(n_max, gamma_dir, jobs=jobs)
    results = [
        SuiteResult("irreducible_roundtrip", check_roundtrip(gammas)),
        SuiteResult("irreducible_size_bound", check_size_bound(gammas)),
        SuiteResult("q_sequence_existence", check_q_sequence(gammas)),
        SuiteResult("no_case_3", check_no_case3(gammas)),
        SuiteResult("suffix_closure", check_suffix_closure(gammas)),
        SuiteResult("kappa_fixture", check_fixture(gammas)),
        SuiteResult("kappa_le_counting_bound", check_kappa_bounds(gammas)),
        SuiteResult("correlation_structure", check_correlations(gammas, correlation_limit, jobs)),
    ]
    lemmas = run_lemmas(words, seed=seed)
    results += [SuiteResult(f"lemma_{name}", v) for name, v in lemmas.items()]
    return results
