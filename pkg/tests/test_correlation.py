import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from periodica.correlation import (Correlation, all_correlations, correlate, correlate_prefix,
                                   correlation_witness, decompose, delta, recompose)
from periodica.errors import DomainError, InvalidCorrelation
from periodica.periods import Autocorrelation, autocorrelation


def correlation_by_definition(u, v):
    """t[k] = 1 iff u[i] = v[j] for every i = j + k inside both words."""
    n, m = len(u), len(v)
    return "".join("1" if all(u[j + k] == v[j] for j in range(m) if j + k < n) else "0" for k in range(n))


@pytest.mark.parametrize("u,v,expected", [
    ("aabbaa", "baabaa", "000100"),
    ("ab", "ba", "01"),
    ("abbaabba", "abbaabba", "10001001"),
    ("aaaa", "bbbb", "0000"),
])
def test_correlate_examples(u, v, expected):
    assert correlation_by_definition(u, v) == expected
    assert str(correlate(u, v)) == expected


def test_correlate_rejects_unequal_lengths():
    with pytest.raises(DomainError):
        correlate("ab", "abc")
    assert correlate_prefix("ab", "bab") == correlate("ab", "ba")


@given(st.text("ab", min_size=1, max_size=30))
def test_self_correlation_is_autocorrelation(u):
    assert correlate(u, u).bits == autocorrelation(u).bits


@given(st.integers(1, 20).flatmap(lambda n: st.tuples(st.text("abc", min_size=n, max_size=n),
                                                      st.text("abc", min_size=n, max_size=n))))
def test_correlate_matches_definition(pair):
    u, v = pair
    assert str(correlate(u, v)) == correlation_by_definition(u, v)


@pytest.mark.parametrize("t,j,s", [("000100", 3, "100"), ("000000", 0, ""), ("10001001", 8, "10001001")])
def test_decompose(t, j, s):
    tt = Correlation.from_string(t)
    jj, ss = decompose(tt)
    assert (jj, str(ss)) == (j, s)
    assert recompose(tt.n, ss) == tt


def test_witness_for_table_example():
    t = Correlation.from_string("000100")
    u, v = correlation_witness(t)
    assert correlate(u, v) == t
    w = u[3:]
    assert u == "aaa" + w and v == w + "bbb" and w[0] == "b"
    assert str(autocorrelation(w)) == "100"


def test_witness_edge_cases():
    assert correlation_witness(Correlation.from_string("0000")) == ("aaaa", "bbbb")
    u, v = correlation_witness(Correlation.from_string("10001001"))
    assert u == v and str(autocorrelation(u)) == "10001001"


def test_witness_rejects_invalid():
    # trailing part 110 is not an autocorrelation
    with pytest.raises(InvalidCorrelation):
        correlation_witness(Correlation.from_string("00110"))


@pytest.mark.parametrize("n,expected", [(0, 1), (2, 4), (3, 7)])
def test_delta_examples(n, expected, gammas):
    kappas = [gammas[j].kappa for j in range(n + 1)]
    assert kappas[:4] == [1, 1, 2, 3][: n + 1]
    assert delta(n, kappas) == expected


def test_delta_needs_all_kappas():
    with pytest.raises(DomainError):
        delta(3, [1, 1, 2])


def test_packed_route_matches_scalar():
    for n in range(1, 7):
        scalar = {correlate(u, v).bits for u in itertools.product("ab", repeat=n)
                  for v in itertools.product("ab", repeat=n)}
        assert all_correlations(n) == scalar
    for n in range(1, 5):
        scalar = {correlate(u, v).bits for u in itertools.product("abc", repeat=n)
                  for v in itertools.product("abc", repeat=n)}
        assert all_correlations(n, sigma=3) == scalar


def test_correlation_structure(gammas):
    for n in range(1, 11):
        brute = all_correlations(n)
        built = {recompose(n, s).bits for j in range(n + 1) for s in gammas[j].members}
        assert brute == built
        assert len(brute) == delta(n, [gammas[j].kappa for j in range(n + 1)])


def test_witness_soundness(gammas):
    for n in range(1, 10):
        for bits in all_correlations(n):
            t = Correlation(n, bits)
            u, v = correlation_witness(t)
            assert set(u + v) <= {"a", "b"}
            assert correlate(u, v) == t


def test_alphabet_independence():
    for n in range(1, 7):
        assert all_correlations(n, sigma=3) == all_correlations(n)


def test_parallel_merge_is_deterministic():
    assert all_correlations(7, jobs=3) == all_correlations(7)
