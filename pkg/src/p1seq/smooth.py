"""S-smooth numbers: exact enumeration, exact counting, and the term count t_l.

Everything here is integer arithmetic. The floating-point lattice route in
``simplex_count`` is only used by ``reduction_check`` to compare against.
"""

from __future__ import annotations

import bisect
import heapq
import math
from dataclasses import dataclass
from typing import Iterable, Iterator

from ._parallel import run_chunks, split_range
from .arith import is_prime, ln_int
from .errors import DomainError, ResourceError
from .simplex_count import count_exact

DEFAULT_CAP = 10**8


@dataclass(frozen=True)
class PrimeSet:
    primes: tuple[int, ...]

    def __post_init__(self):
        ps = tuple(int(p) for p in self.primes)
        object.__setattr__(self, "primes", ps)
        if not ps:
            raise DomainError("prime set must be non-empty")
        for a, b in zip(ps, ps[1:]):
            if b <= a:
                raise DomainError("primes must be strictly increasing without duplicates")
        for p in ps:
            if not is_prime(p):
                raise DomainError(f"{p} is not prime")

    @classmethod
    def of(cls, primes: Iterable[int]) -> "PrimeSet":
        """Build from any iterable, sorting and removing duplicates."""
        return cls(tuple(sorted(set(primes))))

    def __iter__(self):
        return iter(self.primes)

    def __len__(self):
        return len(self.primes)

    def __contains__(self, p):
        return p in self.primes

    def log_weights(self) -> tuple[float, ...]:
        return tuple(math.log(p) for p in self.primes)


def _as_primeset(S) -> PrimeSet:
    return S if isinstance(S, PrimeSet) else PrimeSet.of(S)


def _check_limit(limit: int) -> int:
    if not isinstance(limit, int) or limit < 1:
        raise DomainError(f"limit must be a positive integer, got {limit!r}")
    return limit


def iter_smooth(S, limit: int | None = None) -> Iterator[int]:
    """Ascending stream of S-smooth numbers starting at 1.

    Heap merge: each popped v is multiplied only by primes >= the largest
    prime used to build it, so every value is generated exactly once.
    """
    ps = _as_primeset(S).primes
    heap = [(1, 0)]
    while heap:
        v, j = heapq.heappop(heap)
        if limit is not None and v > limit:
            return
        yield v
        for i in range(j, len(ps)):
            heapq.heappush(heap, (v * ps[i], i))


def enumerate_smooth(S, limit: int, cap: int = DEFAULT_CAP) -> list[int]:
    """Every S-smooth integer in [1, limit], ascending."""
    _check_limit(limit)
    out = []
    for v in iter_smooth(S, limit):
        out.append(v)
        if len(out) > cap:
            raise ResourceError(f"more than {cap} smooth numbers below {limit}")
    return out


def first_smooth(S, count: int, start: int = 2) -> list[int]:
    """The first ``count`` S-smooth numbers that are >= ``start``."""
    out = []
    if count <= 0:
        return out
    for v in iter_smooth(S):
        if v >= start:
            out.append(v)
            if len(out) == count:
                break
    return out


def _ilog(x: int, p: int) -> int:
    # largest e with p**e <= x, for x >= 1
    if p == 2:
        return x.bit_length() - 1
    e = 0
    while x >= p:
        x //= p
        e += 1
    return e


def _count_from(ps: tuple[int, ...], i: int, limit: int) -> int:
    if i == len(ps) - 1:
        return _ilog(limit, ps[i]) + 1
    total = 0
    p = ps[i]
    while limit >= 1:
        total += _count_from(ps, i + 1, limit)
        limit //= p
    return total


def _count_top_slice(args) -> int:
    ps, limit, e_lo, e_hi = args
    total = 0
    for e in range(e_lo, e_hi):
        rest = limit // ps[0] ** e
        if rest < 1:
            break
        total += 1 if len(ps) == 1 else _count_from(ps, 1, rest)
    return total


def count_smooth(S, limit: int, cap: int = DEFAULT_CAP, workers: int = 1) -> int:
    """Number of S-smooth integers in [1, limit], without listing them.

    Depth-first over exponents with exact floor division, largest prime at
    the top; the last prime's exponent range is counted in closed form.
    """
    _check_limit(limit)
    # largest prime first: shallowest top level, cheapest closed form at the bottom
    ps = tuple(sorted(_as_primeset(S).primes, reverse=True))
    top = _ilog(limit, ps[0]) + 1
    chunks = [(ps, limit, lo, hi) for lo, hi in split_range(0, top, max(1, workers) * 4)]
    total = sum(run_chunks(_count_top_slice, chunks, workers))
    if total > cap:
        raise ResourceError(f"smooth count {total} exceeds cap {cap}")
    return total


def smooth_in_window(S, lo: int, hi: int) -> list[int]:
    """S-smooth integers in [lo, hi], ascending."""
    ps = _as_primeset(S).primes
    out = []

    def walk(i: int, v: int):
        if i == len(ps):
            if v >= lo:
                out.append(v)
            return
        while v <= hi:
            walk(i + 1, v)
            v *= ps[i]

    if hi >= 1:
        walk(0, 1)
    return sorted(out)


def t_l(prefix, l: int) -> int:
    """Number of prefix terms that are <= l (binary search)."""
    terms = prefix.terms if hasattr(prefix, "terms") else prefix
    return bisect.bisect_right(terms, l)


@dataclass(frozen=True)
class ReductionCheck:
    """Integer smooth count against the lattice count N(ln limit; ln p_i)."""

    primes: tuple[int, ...]
    limit: int
    integer_count: int
    lattice_count: int
    ambiguous: int
    tolerance: float

    @property
    def consistent(self) -> bool:
        return abs(self.integer_count - self.lattice_count) <= self.ambiguous

    def to_dict(self) -> dict:
        return {
            "primes": list(self.primes),
            "limit": self.limit,
            "integer_count": self.integer_count,
            "lattice_count": self.lattice_count,
            "ambiguous": self.ambiguous,
            "tolerance": self.tolerance,
            "consistent": self.consistent,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ReductionCheck":
        return cls(tuple(d["primes"]), d["limit"], d["integer_count"], d["lattice_count"],
                   d["ambiguous"], d["tolerance"])


def boundary_points(S, limit: int, tol: float = 1e-9) -> list[int]:
    """S-smooth m with |ln m - ln limit| <= tol: the points whose side of the
    log boundary binary64 cannot be trusted to decide."""
    _check_limit(limit)
    # integer-only window, generous on both sides; the log filter below is the real test
    slack = ((limit * math.ceil(2 * math.expm1(tol) * 2**60)) >> 60) + 2
    lo, hi = max(1, limit - slack), limit + slack
    L = ln_int(limit)
    return [m for m in smooth_in_window(S, lo, hi) if abs(ln_int(m) - L) <= tol]


def reduction_check(S, limit: int, tol: float = 1e-9, workers: int = 1) -> ReductionCheck:
    S = _as_primeset(S)
    return ReductionCheck(
        primes=S.primes,
        limit=limit,
        integer_count=count_smooth(S, limit, workers=workers),
        lattice_count=count_exact(math.log(limit), S.log_weights(), workers=workers),
        ambiguous=len(boundary_points(S, limit, tol)),
        tolerance=tol,
    )
