"""Periods, period sets and autocorrelations of single words.

Words are any finite sequences of comparable symbols (usually ``str``).
Positions are zero-indexed. Bitvectors are stored as Python integers with
bit ``i`` holding position ``i``; the textual form writes position 0 first,
so ``abbaabba`` has autocorrelation ``"10001001"``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from math import gcd
from typing import Hashable, Iterable, Sequence

from .errors import DomainError, PreconditionError

Word = Sequence[Hashable]

# Set PERIODICA_DEBUG=1 to cross-check every period_set call against the naive scan.
DEBUG_CROSS_CHECK = os.environ.get("PERIODICA_DEBUG", "") not in ("", "0")


def _parse_bits(text: str) -> tuple[int, int]:
    bits = 0
    for i, ch in enumerate(text):
        if ch == "1":
            bits |= 1 << i
        elif ch != "0":
            raise DomainError(f"bitvector text must contain only '0'/'1', got {text!r}")
    return len(text), bits


@dataclass(frozen=True)
class BitVector:
    """Fixed-length bitvector; ``bits`` bit ``i`` is position ``i``."""

    n: int
    bits: int

    def __post_init__(self):
        if self.n < 0:
            raise DomainError(f"negative length {self.n}")
        if self.bits < 0 or self.bits >> self.n:
            raise DomainError(f"bits {self.bits:#x} do not fit in length {self.n}")

    @classmethod
    def from_string(cls, text: str):
        n, bits = _parse_bits(text.strip())
        return cls(n, bits)

    @classmethod
    def from_indices(cls, n: int, indices: Iterable[int]):
        bits = 0
        for i in indices:
            if not 0 <= i < n:
                raise DomainError(f"index {i} outside [0, {n})")
            bits |= 1 << i
        return cls(n, bits)

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(i)
        return (self.bits >> i) & 1

    def __str__(self) -> str:
        return "".join("1" if (self.bits >> i) & 1 else "0" for i in range(self.n))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({str(self)!r})"

    def indices(self) -> list[int]:
        return [i for i in range(self.n) if (self.bits >> i) & 1]

    def tail(self, i: int) -> tuple[int, int]:
        """Length and bits of the slice ``[i..n-1]``."""
        if not 0 <= i <= self.n:
            raise DomainError(f"slice start {i} outside [0, {self.n}]")
        return self.n - i, self.bits >> i


@dataclass(frozen=True, repr=False)
class Autocorrelation(BitVector):
    """Bitvector of a period set. Bit 0 is set unless the vector is empty."""

    def __post_init__(self):
        super().__post_init__()
        if self.n > 0 and not self.bits & 1:
            raise DomainError(f"autocorrelation {self} must have bit 0 set")

    def period_set(self) -> PeriodSet:
        return PeriodSet(self.n, tuple(self.indices()))


@dataclass(frozen=True)
class PeriodSet:
    """Sorted periods of a word of length ``n``; always contains 0."""

    n: int
    periods: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "periods", tuple(self.periods))
        ps = self.periods
        if self.n < 1:
            raise DomainError("period sets need n >= 1")
        if not ps or ps[0] != 0:
            raise DomainError(f"period set {ps} must contain 0")
        if any(a >= b for a, b in zip(ps, ps[1:])):
            raise DomainError(f"periods {ps} not strictly ascending")
        if ps[-1] >= self.n:
            raise DomainError(f"period {ps[-1]} outside [0, {self.n})")

    @classmethod
    def parse(cls, n: int, text: str) -> PeriodSet:
        body = text.strip().removeprefix("{").removesuffix("}")
        return cls(n, tuple(int(x) for x in body.split(",") if x.strip()))

    def __contains__(self, p: int) -> bool:
        return p in self.periods

    def __iter__(self):
        return iter(self.periods)

    def __len__(self) -> int:
        return len(self.periods)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.periods)) + "}"

    def autocorrelation(self) -> Autocorrelation:
        return Autocorrelation.from_indices(self.n, self.periods)


def _check_word(u: Word) -> int:
    n = len(u)
    if n == 0:
        raise DomainError("the empty word has no period set")
    return n


def is_period(u: Word, p: int) -> bool:
    n = _check_word(u)
    if not 0 <= p < n:
        raise DomainError(f"period candidate {p} outside [0, {n})")
    return all(u[i] == u[i + p] for i in range(n - p))


def periods_naive(u: Word) -> list[int]:
    """Scan every shift against the definition. O(n^2); the reference route."""
    n = _check_word(u)
    return [p for p in range(n) if all(u[i] == u[i + p] for i in range(n - p))]


def border_array(u: Word) -> list[int]:
    """``b[i]`` is the length of the longest proper border of ``u[0..i]``."""
    n = len(u)
    b = [0] * n
    k = 0
    for i in range(1, n):
        while k > 0 and u[i] != u[k]:
            k = b[k - 1]
        if u[i] == u[k]:
            k += 1
        b[i] = k
    return b


def periods_border(u: Word) -> list[int]:
    """Periods via the border chain of the whole word. O(n)."""
    n = _check_word(u)
    b = border_array(u)
    out = [0]
    k = b[-1]
    while k > 0:
        out.append(n - k)
        k = b[k - 1]
    # the border chain yields periods in ascending order already
    return out


def period_set(u: Word, method: str = "border") -> PeriodSet:
    if method == "border":
        ps = periods_border(u)
    elif method == "naive":
        ps = periods_naive(u)
    else:
        raise DomainError(f"unknown period-set method {method!r}")
    if DEBUG_CROSS_CHECK and method == "border":
        ref = periods_naive(u)
        assert ps == ref, f"border route {ps} != naive route {ref} for {u!r}"
    return PeriodSet(len(u), tuple(ps))


def autocorrelation(u: Word, method: str = "border") -> Autocorrelation:
    return period_set(u, method).autocorrelation()


def basic_period(ps: PeriodSet) -> int | None:
    return ps.periods[1] if len(ps.periods) > 1 else None


def suffix_autocorrelation(s: Autocorrelation, i: int) -> Autocorrelation:
    """Slice ``s[i..n-1]``; it is the autocorrelation of ``u[i..n-1]`` when ``s[i] = 1``."""
    if not 0 <= i < s.n:
        raise DomainError(f"slice start {i} outside [0, {s.n})")
    if not s[i]:
        raise PreconditionError(f"s[{i}] = 0 in {s}; the slice need not be an autocorrelation")
    return Autocorrelation(*s.tail(i))


def fine_wilf_applies(n: int, p: int, q: int) -> bool:
    """True when two periods p, q of a length-n word force gcd(p, q) to be a period."""
    return n >= p + q - gcd(p, q)
