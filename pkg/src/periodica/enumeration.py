"""Exhaustive enumeration of valid autocorrelations over the binary alphabet.

Words of length n are encoded as integers, bit i = 1 meaning letter ``b`` at
position i. Swapping the two letters preserves the period set, so by default
position 0 is fixed to ``a`` and only 2^(n-1) words are visited.

Three independent routes compute the period set of each word:

``bitparallel``
    numpy shift/xor over a whole block of words at once (default, fastest);
``naive``
    the definition scan of :func:`periodica.periods.periods_naive`;
``border``
    the border-array route of :func:`periodica.periods.periods_border`.
"""

from __future__ import annotations

import logging
import os
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

import numpy as np

from .closure import forward_closure_mask
from .errors import CacheError, DomainError, UnsupportedLength
from .periods import Autocorrelation, periods_border, periods_naive

log = logging.getLogger(__name__)

MAX_N = 24
METHODS = ("bitparallel", "naive", "border")
ALPHABET = "ab"
_BLOCK = 1 << 20


@dataclass(frozen=True)
class GammaSet:
    """All autocorrelations of length ``n``."""

    n: int
    members: frozenset

    @property
    def kappa(self) -> int:
        return len(self.members)

    def __contains__(self, s) -> bool:
        if isinstance(s, str):
            s = Autocorrelation.from_string(s)
        return s in self.members

    def __iter__(self):
        return iter(self.sorted())

    def __len__(self) -> int:
        return len(self.members)

    def sorted(self) -> list[Autocorrelation]:
        return sorted(self.members, key=str)

    def codes(self) -> set[int]:
        return {s.bits for s in self.members}

    @classmethod
    def from_codes(cls, n: int, codes) -> GammaSet:
        return cls(n, frozenset(Autocorrelation(n, int(c)) for c in codes))


def word_from_int(w: int, n: int) -> str:
    return "".join(ALPHABET[(w >> i) & 1] for i in range(n))


def _codes_bitparallel(n: int, base: int, shift: int, count: int) -> set[int]:
    out: set[int] = set()
    for start in range(0, count, _BLOCK):
        stop = min(count, start + _BLOCK)
        words = np.uint64(base) | (np.arange(start, stop, dtype=np.uint64) << np.uint64(shift))
        code = np.ones(stop - start, dtype=np.uint64)
        for p in range(1, n):
            mask = np.uint64((1 << (n - p)) - 1)
            agree = ((words ^ (words >> np.uint64(p))) & mask) == 0
            code |= agree.astype(np.uint64) << np.uint64(p)
        out.update(int(c) for c in np.unique(code))
    return out


def _codes_scalar(n: int, base: int, shift: int, count: int, method: str) -> set[int]:
    route = periods_naive if method == "naive" else periods_border
    out = set()
    for r in range(count):
        u = word_from_int(base | (r << shift), n)
        code = 0
        for p in route(u):
            code |= 1 << p
        out.add(code)
    return out


def _enumerate_class(task) -> set[int]:
    n, method, base, shift, count = task
    if method == "bitparallel":
        return _codes_bitparallel(n, base, shift, count)
    return _codes_scalar(n, base, shift, count, method)


def _tasks(n: int, jobs: int, method: str, canonical: bool):
    first_free = 1 if canonical else 0
    free = n - first_free
    m = min((jobs - 1).bit_length(), free)  # ceil(log2(jobs))
    shift = first_free + m
    count = 1 << (free - m)
    return [(n, method, c << first_free, shift, count) for c in range(1 << m)]


def enumerate_gamma(n: int, jobs: int = 1, method: str = "bitparallel",
                    canonical: bool = True, max_n: int = MAX_N) -> GammaSet:
    """Exact set of autocorrelations of binary words of length ``n``.

    The word space is split into classes by a fixed prefix of
    ceil(log2(jobs)) letters; each class is enumerated independently and the
    results are merged by union, so the output does not depend on ``jobs``.
    """
    if method not in METHODS:
        raise DomainError(f"unknown method {method!r}; choose from {METHODS}")
    if jobs < 1:
        raise DomainError("jobs must be >= 1")
    if n < 0:
        raise DomainError(f"negative length {n}")
    if n > max_n:
        raise UnsupportedLength(
            f"n = {n} exceeds the enumeration ceiling {max_n}; "
            f"raise it explicitly (e.g. --max-n) if you can afford 2^{n - 1} words")
    if n == 0:
        return GammaSet(0, frozenset({Autocorrelation(0, 0)}))
    if method == "bitparallel" and n > 64:
        raise UnsupportedLength("the bit-parallel route packs words into 64-bit lanes")
    tasks = _tasks(n, jobs, method, canonical)
    codes: set[int] = set()
    if jobs == 1 or len(tasks) == 1:
        for t in tasks:
            codes |= _enumerate_class(t)
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_enumerate_class, tasks):
                codes |= part
    return GammaSet.from_codes(n, codes)


# cache files

def gamma_path(n: int, gamma_dir) -> Path:
    return Path(gamma_dir) / f"gamma_{n}.txt"


def format_gamma(gs: GammaSet) -> str:
    lines = [f"# n={gs.n} kappa={gs.kappa}"]
    lines += [str(s) for s in gs.sorted()]
    return "\n".join(lines) + "\n"


def write_gamma_cache(gs: GammaSet, gamma_dir) -> Path:
    """Write ``gamma_<n>.txt`` atomically (temp file in the same directory, then rename)."""
    gamma_dir = Path(gamma_dir)
    gamma_dir.mkdir(parents=True, exist_ok=True)
    path = gamma_path(gs.n, gamma_dir)
    fd, tmp = tempfile.mkstemp(prefix=path.name + ".", suffix=".tmp", dir=gamma_dir)
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(format_gamma(gs))
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def parse_gamma(text: str, path="<string>") -> GammaSet:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("#"):
        raise CacheError(path, "missing '# n=<n> kappa=<k>' header")
    try:
        fields = dict(f.split("=", 1) for f in lines[0][1:].split())
        n, kappa = int(fields["n"]), int(fields["kappa"])
    except (KeyError, ValueError):
        raise CacheError(path, f"bad header {lines[0]!r}") from None
    members = set()
    body = [ln.strip() for ln in lines[1:] if ln.strip()]
    for lineno, ln in enumerate(body, start=2):
        if len(ln) != n or set(ln) - {"0", "1"}:
            raise CacheError(path, f"line {lineno}: {ln!r} is not a length-{n} 0/1 string")
        try:
            members.add(Autocorrelation.from_string(ln))
        except DomainError as e:
            raise CacheError(path, f"line {lineno}: {e}") from None
    if n == 0:
        members = {Autocorrelation(0, 0)}
    if len(members) != kappa:
        raise CacheError(path, f"header says kappa={kappa} but {len(members)} distinct lines follow")
    return GammaSet(n, frozenset(members))


def read_gamma_cache(n: int, gamma_dir) -> GammaSet:
    path = gamma_path(n, gamma_dir)
    try:
        text = path.read_text()
    except OSError as e:
        raise CacheError(path, f"unreadable ({e.strerror or e})") from None
    gs = parse_gamma(text, path)
    if gs.n != n:
        raise CacheError(path, f"header n={gs.n} does not match file name")
    return gs


def load_gamma(n: int, gamma_dir=None, jobs: int = 1, max_n: int = MAX_N,
               write: bool = False) -> GammaSet:
    """Read Γ_n from ``gamma_dir`` if cached, otherwise enumerate (and optionally cache)."""
    if gamma_dir is not None and gamma_path(n, gamma_dir).exists():
        return read_gamma_cache(n, gamma_dir)
    if n <= MAX_N and jobs == 1 and not write:
        return GammaSet.from_codes(n, _gamma_codes(n))
    gs = enumerate_gamma(n, jobs=jobs, max_n=max_n)
    if write and gamma_dir is not None:
        write_gamma_cache(gs, gamma_dir)
    return gs


@lru_cache(maxsize=None)
def _gamma_codes(n: int) -> frozenset:
    return frozenset(s.bits for s in enumerate_gamma(n).members)


def kappa(n: int, gamma_dir=None, max_n: int = MAX_N) -> int:
    if n < 0:
        raise DomainError(f"negative length {n}")
    if n > max_n and (gamma_dir is None or not gamma_path(n, gamma_dir).exists()):
        raise UnsupportedLength(f"kappa_{n} is neither cached nor within the ceiling {max_n}")
    return load_gamma(n, gamma_dir, max_n=max_n).kappa


def _as_autocorrelation_bits(s) -> tuple[int, int]:
    if isinstance(s, str):
        from .periods import BitVector

        s = BitVector.from_string(s)
    return s.n, s.bits


def is_valid_autocorrelation(s, gamma_dir=None, max_n: int = MAX_N) -> bool:
    """Membership of a bitvector in the enumerated Γ_{|s|}."""
    n, bits = _as_autocorrelation_bits(s)
    if n < 1:
        raise DomainError("validity is defined for lengths >= 1")
    cached = gamma_dir is not None and gamma_path(n, gamma_dir).exists()
    if n > max_n and not cached:
        raise UnsupportedLength(f"length {n} exceeds the enumeration ceiling {max_n}")
    if not bits & 1:
        return False
    if cached:
        return bits in read_gamma_cache(n, gamma_dir).codes()
    return bits in _gamma_codes(n)


def load_a005434() -> list[int]:
    """Published κ_1, κ_2, ... (OEIS A005434) as shipped in the package fixture."""
    text = resources.files("periodica").joinpath("data/a005434.txt").read_text()
    return [int(ln) for ln in text.split() if ln.strip()]


def witness(s) -> str | None:
    """Lexicographically smallest word over {a, b} with autocorrelation ``s``, or None.

    Backtracking over prefixes: a set bit p forces position m to equal m - p;
    a clear bit p must see at least one mismatch u[i] != u[i+p] by the end.
    """
    n, bits = _as_autocorrelation_bits(s)
    if n < 1:
        raise DomainError("witness search needs length >= 1")
    if not bits & 1:
        return None
    # a valid period set is closed under forward propagation
    if forward_closure_mask(bits, n) != bits:
        return None
    ones = [p for p in range(1, n) if bits >> p & 1]
    zeros = [p for p in range(1, n) if not bits >> p & 1]
    u = [0] * n
    broken = {p: 0 for p in zeros}  # mismatches seen so far per zero bit

    def place(m: int) -> bool:
        if m == n:
            return all(broken[p] for p in zeros)
        # the lexicographically smallest word starts with 'a'
        choices = (0,) if m == 0 else (0, 1)
        for c in choices:
            if any(p <= m and u[m - p] != c for p in ones):
                continue
            u[m] = c
            hits = [p for p in zeros if p <= m and u[m - p] != c]
            for p in hits:
                broken[p] += 1
            if place(m + 1):
                return True
            for p in hits:
                broken[p] -= 1
        return False

    if not place(0):
        return None
    return "".join(ALPHABET[c] for c in u)
