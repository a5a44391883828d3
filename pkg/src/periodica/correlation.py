"""Correlations of equal-length word pairs.

Bit k of the correlation of u over v is set when v, written below u starting
at position k, agrees with u on the whole overlap. Every correlation is a run
of zeros followed by an autocorrelation, which makes the number of
correlations of length n the sum of κ_0..κ_n.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError, InvalidCorrelation
from .periods import Autocorrelation, BitVector, Word


@dataclass(frozen=True, repr=False)
class Correlation(BitVector):
    """Correlation bitvector; unlike an autocorrelation it may be all zero."""


def correlate(u: Word, v: Word) -> Correlation:
    n = len(u)
    if len(v) != n:
        raise DomainError(f"correlation needs equal lengths, got {n} and {len(v)}")
    if n == 0:
        raise DomainError("correlation of empty words is undefined here")
    bits = 0
    for k in range(n):
        if all(u[k + i] == v[i] for i in range(n - k)):
            bits |= 1 << k
    return Correlation(n, bits)


def correlate_prefix(u: Word, v: Word) -> Correlation:
    """Correlation of u over a longer v, which only depends on v[0..|u|-1]."""
    if len(v) < len(u):
        raise DomainError("v must be at least as long as u")
    return correlate(u, v[:len(u)])


def decompose(t: BitVector) -> tuple[int, Autocorrelation]:
    """Split t as 0^(n-j) followed by its trailing j bits.

    The trailing part always starts with 1 (or is empty); whether it is a
    valid autocorrelation is not checked here.
    """
    if t.bits == 0:
        return 0, Autocorrelation(0, 0)
    first = (t.bits & -t.bits).bit_length() - 1
    j = t.n - first
    return j, Autocorrelation(j, t.bits >> first)


def recompose(n: int, s: Autocorrelation) -> Correlation:
    if s.n > n:
        raise DomainError(f"autocorrelation of length {s.n} does not fit in {n}")
    return Correlation(n, s.bits << (n - s.n))


def correlation_witness(t: BitVector, gamma_dir=None) -> tuple[str, str]:
    """Binary words u, v of length n whose correlation is ``t``.

    With t = 0^(n-j) s and w a binary word of autocorrelation s beginning with
    ``b``, the pair u = a^(n-j) w, v = w b^(n-j) works.
    """
    from .enumeration import witness

    n = t.n
    if n < 1:
        raise DomainError("correlation witness needs n >= 1")
    j, s = decompose(t)
    if j == 0:
        return "a" * n, "b" * n
    w = witness(s)
    if w is None:
        raise InvalidCorrelation(f"{t}: trailing part {s} is not an autocorrelation")
    if w[0] == "a":
        w = w.translate(str.maketrans("ab", "ba"))
    return "a" * (n - j) + w, w + "b" * (n - j)


def delta(n: int, kappas: Sequence[int]) -> int:
    """Number of correlations of length n from κ_0..κ_n."""
    if len(kappas) < n + 1:
        raise DomainError(f"need κ_0..κ_{n}, got {len(kappas)} values")
    return sum(kappas[: n + 1])


def _lane_width(sigma: int) -> int:
    return max(1, (sigma - 1).bit_length())


def _encode_all(n: int, sigma: int):
    """Every word of sigma^n packed into uint64, ``width`` bits per symbol."""
    width = _lane_width(sigma)
    if n * width > 64:
        raise DomainError(f"{sigma}-ary words of length {n} do not fit in 64 bits")
    words = np.zeros(1, dtype=np.uint64)
    for pos in range(n):
        digits = np.arange(sigma, dtype=np.uint64) << np.uint64(pos * width)
        words = (words[:, None] | digits[None, :]).ravel()
    return words, width


def _correlations_of_block(task) -> set[int]:
    n, sigma, lo, hi = task
    words, width = _encode_all(n, sigma)
    out: set[int] = set()
    for u in words[lo:hi]:
        code = np.zeros(words.size, dtype=np.uint64)
        for k in range(n):
            mask = np.uint64((1 << (width * (n - k))) - 1)
            agree = ((u >> np.uint64(width * k)) ^ words) & mask == 0
            code |= agree.astype(np.uint64) << np.uint64(k)
        out.update(int(c) for c in np.unique(code))
    return out


def all_correlations(n: int, sigma: int = 2, jobs: int = 1) -> set[int]:
    """Brute force: bit patterns of the correlation of every pair in sigma^n.

    For each u the whole set of v is checked at once with shift/xor on packed
    words; the u range is split across ``jobs`` processes and merged by union.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    if sigma < 2:
        raise DomainError("alphabet needs at least two letters")
    total = sigma ** n
    step = -(-total // jobs)
    tasks = [(n, sigma, lo, min(total, lo + step)) for lo in range(0, total, step)]
    out: set[int] = set()
    if jobs == 1:
        for t in tasks:
            out |= _correlations_of_block(t)
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_correlations_of_block, tasks):
                out |= part
    return out
