"""Forward closure, irreducible period sets and the q-sequence bound.

The forward propagation rule: if p <= q are periods of a length-n word then
so is every p + k(q - p) below n. ``forward_closure`` saturates a set under
that rule; ``irreducible`` extracts the unique minimal generating subset of a
period set.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import DomainError, InvariantViolation
from .periods import PeriodSet

CASE_BELOW = 1  # a_{i+1} <= a_i + q_i
CASE_ABOVE = 2  # a_{i+1} >= n - q_i
CASE_GAP = 3  # strictly in between; impossible for genuine period sets


def _to_mask(S: Iterable[int], n: int) -> int:
    mask = 0
    for p in S:
        if not 0 <= p < n:
            raise DomainError(f"element {p} outside [0, {n})")
        mask |= 1 << p
    return mask


def _elements(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _saturate(mask: int, n: int) -> int:
    """Least superset of ``mask`` closed under p + k(q - p) < n."""
    while True:
        elems = _elements(mask)
        grown = mask
        for a, p in enumerate(elems):
            for q in elems[a + 1:]:
                step = q - p
                for r in range(q + step, n, step):
                    grown |= 1 << r
        if grown == mask:
            return mask
        mask = grown


def forward_closure_mask(mask: int, n: int) -> int:
    if n < 1:
        raise DomainError("forward closure needs n >= 1")
    if mask < 0 or mask >> n:
        raise DomainError(f"set {mask:#x} not contained in [0, {n})")
    return _saturate(mask, n)


def forward_closure(S: Iterable[int], n: int) -> tuple[int, ...]:
    """Forward closure of ``S`` within ``[0, n)`` as a sorted tuple.

    >>> forward_closure({0, 5}, 12)
    (0, 5, 10)
    """
    if n < 1:
        raise DomainError("forward closure needs n >= 1")
    return tuple(_elements(_saturate(_to_mask(S, n), n)))


@dataclass(frozen=True)
class IrreduciblePeriodSet:
    n: int
    elements: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        es = self.elements
        if not es or es[0] != 0:
            raise DomainError(f"irreducible set {es} must start with 0")
        if any(a >= b for a, b in zip(es, es[1:])) or es[-1] >= self.n:
            raise DomainError(f"irreducible set {es} not ascending within [0, {self.n})")

    @property
    def k(self) -> int:
        return len(self.elements) - 1

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.elements)) + "}"


@dataclass(frozen=True)
class QSequence:
    n: int
    entries: tuple[tuple[int, int], ...]

    def __str__(self) -> str:
        return "\n".join(f"({a},{q})" for a, q in self.entries)

    @property
    def qs(self) -> list[int]:
        return [q for _, q in self.entries]


def _irreducible_elements(mask: int, n: int) -> list[int]:
    out = []
    below = 0  # P ∩ [0, q-1]
    closed = 0  # FC_n(below)
    for q in _elements(mask):
        if not closed >> q & 1:
            out.append(q)
        below |= 1 << q
        closed = _saturate(closed | below, n)
    return out


def irreducible(P: PeriodSet | Iterable[int], n: int | None = None, strict: bool = False,
                gamma_dir=None) -> IrreduciblePeriodSet:
    """Irreducible period set: the q in P not in the forward closure of P ∩ [0, q-1].

    The formula is applied to any subset containing 0 without checking that it
    is a genuine period set. With ``strict=True`` membership in the enumerated
    set of valid autocorrelations is asserted first.
    """
    if isinstance(P, PeriodSet):
        n, elems = P.n, P.periods
    else:
        if n is None:
            raise DomainError("n is required when P is not a PeriodSet")
        elems = tuple(sorted(set(P)))
        PeriodSet(n, elems)  # validates shape
    if strict:
        from .enumeration import is_valid_autocorrelation

        ps = PeriodSet(n, elems)
        if not is_valid_autocorrelation(ps.autocorrelation(), gamma_dir=gamma_dir):
            raise DomainError(f"{ps} is not the period set of any word of length {n}")
    mask = _to_mask(elems, n)
    return IrreduciblePeriodSet(n, tuple(_irreducible_elements(mask, n)))


def q_sequence(R: IrreduciblePeriodSet) -> QSequence:
    """Smallest q_i per element with q_i <= n / 2^i and a_i + q_i = n or in FC_n(a_0..a_i)."""
    n = R.n
    entries = []
    prefix = 0
    for i, a in enumerate(R.elements):
        prefix |= 1 << a
        closed = _saturate(prefix, n)
        found = None
        for q in range(1, n - a + 1):
            if q << i > n:
                break
            if a + q == n or closed >> (a + q) & 1:
                found = q
                break
        if found is None:
            raise InvariantViolation(f"no valid q_{i} for a_{i} = {a} in {R} (n = {n})")
        entries.append((a, found))
    return QSequence(n, tuple(entries))


def choicebound_cases(R: IrreduciblePeriodSet, qs: QSequence | None = None) -> list[int]:
    """Classify each a_{i+1} relative to a_i + q_i and n - q_i (first match wins)."""
    if qs is None:
        qs = q_sequence(R)
    n = R.n
    es = R.elements
    cases = []
    for i in range(len(es) - 1):
        q = qs.entries[i][1]
        nxt = es[i + 1]
        if nxt <= es[i] + q:
            cases.append(CASE_BELOW)
        elif nxt >= n - q:
            cases.append(CASE_ABOVE)
        else:
            cases.append(CASE_GAP)
    return cases
