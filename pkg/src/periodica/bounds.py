"""Bounds on ln(κ_n)/ln²(n) and the comparison table behind the κ_n figure.

The Guibas-Odlyzko and Rivals-Rahmann columns drop their o(1)/O(1/ln² n)
terms; they are asymptotic reference curves, not certified finite-n bounds.
The new upper bound 1/(2 ln 2) + 3/(2 ln n) and the counting bound are exact
statements for every n >= 2.
"""

from __future__ import annotations

import csv
import io
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import CacheError, DomainError
from .enumeration import gamma_path, read_gamma_cache

log = logging.getLogger(__name__)

LN2 = math.log(2)
GO_LOWER = 1 / (2 * LN2)
GO_UPPER = 1 / (2 * math.log(1.5))

CSV_HEADER = ("n", "kappa", "normalized", "new_upper", "go_upper", "go_lower",
              "rr_lower", "counting_bound", "counting_bound_norm", "delta_upper")
CSV_NOTE = ("# go_upper, go_lower and rr_lower omit their o(1) terms (asymptotic reference curves); "
            "the sequences are far from convergence at n = 500")


def _need(n: int, least: int) -> None:
    if n < least:
        raise DomainError(f"n = {n} is below the minimum {least}")


def new_upper_bound(n: int) -> float:
    _need(n, 2)
    return 1 / (2 * LN2) + 3 / (2 * math.log(n))


def floor_log2(n: int) -> int:
    return n.bit_length() - 1


def counting_bound_exact(n: int) -> Fraction:
    """Sum over k = 1..floor(log2 n) of prod_{i<k} (2^(1-i) n - 1), exactly.

    Factors with i >= 2 are not integers, so the sum is a rational.
    """
    _need(n, 2)
    total = Fraction(0)
    prod = Fraction(1)
    for i in range(floor_log2(n)):
        prod *= Fraction(2 * n, 2 ** i) - 1
        total += prod
    return total


def counting_bound(n: int) -> int:
    """Floor of the exact counting bound; κ_n is an integer so nothing is lost."""
    return math.floor(counting_bound_exact(n))


def telescoped_bound(n: int) -> Fraction:
    """2^(-L(L-3)/2) n^L - 1 with L = floor(log2 n): the collapsed upper sum."""
    _need(n, 2)
    L = floor_log2(n)
    # L(L-3) is always even
    return Fraction(n ** L) * Fraction(2) ** (-L * (L - 3) // 2) - 1


def log_closed_form_bound(n: int) -> float:
    _need(n, 2)
    ln = math.log(n)
    return 1.5 * ln + ln * ln / (2 * LN2)


def closed_form_bound(n: int, log_space: bool = False) -> float:
    """exp(3 ln(n)/2 + ln²(n)/(2 ln 2)); pass ``log_space=True`` for its logarithm."""
    lv = log_closed_form_bound(n)
    if log_space:
        return lv
    try:
        return math.exp(lv)
    except OverflowError:
        raise DomainError(f"closed-form bound overflows at n = {n}; use log_space=True") from None


def go_bounds(n: int) -> tuple[float, float]:
    _need(n, 2)
    return GO_LOWER, GO_UPPER


def rr_lower_bound(n: int) -> float:
    _need(n, 3)
    ln = math.log(n)
    lln = math.log(ln)
    return (GO_LOWER * (1 - lln / ln) ** 2 + 0.4139 / ln
            - 1.47123 * lln / (ln * ln))


def delta_upper_bound(n: int) -> float:
    """ln(2 + (n-1) exp(ln²(n)/(2 ln 2) + 3 ln(n)/2)) / ln²(n), evaluated in log space."""
    _need(n, 2)
    ln = math.log(n)
    inner = math.log(n - 1) + log_closed_form_bound(n)
    return _logaddexp(LN2, inner) / (ln * ln)


def _logaddexp(a: float, b: float) -> float:
    hi, lo = max(a, b), min(a, b)
    return hi + math.log1p(math.exp(lo - hi))


def normalized(kappa: int, n: int) -> float:
    _need(n, 2)
    ln = math.log(n)
    return math.log(kappa) / (ln * ln)


@dataclass
class BoundsRow:
    n: int
    kappa: int | None
    normalized: float | None
    new_upper: float
    go_upper: float
    go_lower: float
    rr_lower: float | None
    counting_bound: int
    counting_bound_normalized: float
    delta_upper: float
    warnings: list = field(default_factory=list)

    def csv_fields(self) -> list[str]:
        return [str(self.n), "" if self.kappa is None else str(self.kappa),
                _fmt(self.normalized), _fmt(self.new_upper), _fmt(self.go_upper),
                _fmt(self.go_lower), _fmt(self.rr_lower), str(self.counting_bound),
                _fmt(self.counting_bound_normalized), _fmt(self.delta_upper)]


def _fmt(x: float | None) -> str:
    return "" if x is None else f"{x:.10g}"


def bounds_row(n: int, kappa: int | None = None) -> BoundsRow:
    _need(n, 2)
    cb = counting_bound(n)
    ln2n = math.log(n) ** 2
    lo, hi = go_bounds(n)
    return BoundsRow(
        n=n,
        kappa=kappa,
        normalized=None if kappa is None else normalized(kappa, n),
        new_upper=new_upper_bound(n),
        go_upper=hi,
        go_lower=lo,
        rr_lower=rr_lower_bound(n) if n >= 3 else None,
        counting_bound=cb,
        counting_bound_normalized=math.log(cb) / ln2n,
        delta_upper=delta_upper_bound(n),
    )


def build_table(max_n: int, gamma_dir=None) -> list[BoundsRow]:
    """One row per n in [2, max_n]; κ_n filled where ``gamma_dir`` has a cache."""
    _need(max_n, 2)
    rows = []
    for n in range(2, max_n + 1):
        kappa = None
        warning = None
        if gamma_dir is not None and gamma_path(n, gamma_dir).exists():
            try:
                kappa = read_gamma_cache(n, gamma_dir).kappa
            except CacheError as e:
                warning = str(e)
                log.warning("skipping kappa for n=%d: %s", n, e)
        row = bounds_row(n, kappa)
        if warning:
            row.warnings.append(warning)
        rows.append(row)
    return rows


def table_csv(rows: list[BoundsRow], note: bool = True) -> str:
    """Header first, one line per row, then the reference-curve note as a ``#`` comment."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow(r.csv_fields())
    if note:
        buf.write(CSV_NOTE + "\n")
    return buf.getvalue()


def read_table_csv(text: str) -> list[dict]:
    body = [ln for ln in text.splitlines() if not ln.startswith("#")]
    return list(csv.DictReader(body))
