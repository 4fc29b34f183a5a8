"""Growth diagnostics: d_k = ln ln n_k / ln k and the smooth-sequence bound.

For a sequence whose terms are all S-smooth, counting lattice points gives
k = t_{n_k} <= a (ln n_k)^|S|; ``smooth_lower_bound_check`` tests that row
by row with a from ``poly_bound_constant`` at delta = ln 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .arith import ln_int
from .errors import DomainError
from .sequences import SequencePrefix, validate_increasing
from .simplex_count import poly_bound_constant
from .smooth import PrimeSet, first_smooth

SATISFIED = "criterion-satisfied-empirically"
INCONCLUSIVE = "inconclusive"


def growth_value(n_k: int, k: int) -> float:
    """d_k for a single term; needs k >= 2 and n_k >= 3."""
    if k < 2 or n_k < 3:
        raise DomainError(f"d_k undefined for k={k}, n_k={n_k}")
    return math.log(ln_int(n_k)) / math.log(k)


@dataclass(frozen=True)
class GrowthReport:
    entries: tuple[tuple[int, int, float], ...]
    running_inf: tuple[float, ...]
    first_valid_k: int
    verdict: str
    threshold: float

    def d(self, k: int) -> float:
        return self.entries[k - self.first_valid_k][2]

    def inf_at(self, k: int) -> float:
        return self.running_inf[k - self.first_valid_k]

    def tail_infimum(self, k0: int) -> float:
        """min d_j over entries with j >= k0 (the running infimum looks backwards,
        this one looks forwards)."""
        vals = [d for k, _, d in self.entries if k >= k0]
        if not vals:
            raise DomainError(f"no entries at or beyond k={k0}")
        return min(vals)

    def to_dict(self) -> dict:
        return {
            "first_valid_k": self.first_valid_k,
            "verdict": self.verdict,
            "threshold": self.threshold,
            "entries": [{"k": k, "n_k": n, "d_k": d} for k, n, d in self.entries],
            "running_inf": list(self.running_inf),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "GrowthReport":
        return cls(
            entries=tuple((e["k"], e["n_k"], e["d_k"]) for e in d["entries"]),
            running_inf=tuple(d["running_inf"]),
            first_valid_k=d["first_valid_k"],
            verdict=d["verdict"],
            threshold=d["threshold"],
        )


def growth_statistic(prefix: SequencePrefix, threshold: float = 0.05) -> GrowthReport:
    """d_k and its running infimum from the first index with k >= 2 and n_k >= 3.

    The verdict is empirical only: the running infimum at the last index must
    be below ``threshold`` and must have dropped since index ceil(K/10).
    """
    terms = prefix.terms if isinstance(prefix, SequencePrefix) else validate_increasing(prefix).terms
    first = next((k for k in range(2, len(terms) + 1) if terms[k - 1] >= 3), None)
    if first is None:
        raise DomainError(f"prefix of length {len(terms)} has no index k >= 2 with n_k >= 3")
    entries = []
    running = []
    cur = math.inf
    for k in range(first, len(terms) + 1):
        n = terms[k - 1]
        assert n >= 3
        d = growth_value(n, k)
        cur = min(cur, d)
        entries.append((k, n, d))
        running.append(cur)
    K = len(terms)
    k_ref = max(first, math.ceil(K / 10))
    decreasing = running[-1] < running[k_ref - first]
    verdict = SATISFIED if running[-1] < threshold and decreasing else INCONCLUSIVE
    return GrowthReport(tuple(entries), tuple(running), first, verdict, threshold)


@dataclass(frozen=True)
class BoundRow:
    k: int
    n_k: int
    lhs: int
    rhs: float
    passed: bool


@dataclass(frozen=True)
class BoundCheckReport:
    primes: tuple[int, ...]
    a: float
    delta: float
    rows: tuple[BoundRow, ...]

    @property
    def all_pass(self) -> bool:
        return all(r.passed for r in self.rows)

    @property
    def failures(self) -> list[BoundRow]:
        return [r for r in self.rows if not r.passed]

    def to_dict(self) -> dict:
        return {
            "primes": list(self.primes),
            "a": self.a,
            "delta": self.delta,
            "all_pass": self.all_pass,
            "rows": [{"k": r.k, "n_k": r.n_k, "lhs": r.lhs, "rhs": r.rhs, "pass": r.passed} for r in self.rows],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "BoundCheckReport":
        rows = tuple(BoundRow(r["k"], r["n_k"], r["lhs"], r["rhs"], r["pass"]) for r in d["rows"])
        return cls(tuple(d["primes"]), d["a"], d["delta"], rows)


def smooth_lower_bound_check(S, K: int) -> BoundCheckReport:
    """Check k <= a (ln n_k)^n over the first K S-smooth numbers >= 2."""
    if K < 2:
        raise DomainError(f"K must be >= 2, got {K}")
    S = S if isinstance(S, PrimeSet) else PrimeSet.of(S)
    n = len(S)
    # smallest W = ln n_k over terms >= 2
    delta = math.log(2)
    a = poly_bound_constant(S.log_weights(), delta)
    rows = []
    for k, n_k in enumerate(first_smooth(S, K, start=2), start=1):
        if k < 2:
            continue
        rhs = a * ln_int(n_k) ** n
        rows.append(BoundRow(k, n_k, k, rhs, k <= rhs))
    return BoundCheckReport(S.primes, a, delta, tuple(rows))
