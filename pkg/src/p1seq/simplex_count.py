"""Lattice points under a weighted simplex.

N(W; w) counts non-negative integer vectors k with sum(k_i * w_i) <= W.
The exact count is a pruned depth-first enumeration; the upper bound is the
closed form (W + sum w)^n / (n! prod w).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from ._parallel import run_chunks, split_range
from .errors import DomainError

INT64_MAX = 2**63 - 1


@dataclass(frozen=True)
class WeightVector:
    weights: tuple[float, ...]

    def __post_init__(self):
        ws = tuple(float(w) for w in self.weights)
        object.__setattr__(self, "weights", ws)
        if not ws:
            raise DomainError("weight vector must have at least one entry")
        for w in ws:
            if not (w > 0 and math.isfinite(w)):
                raise DomainError(f"weights must be finite and positive, got {w}")

    @property
    def n(self) -> int:
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)

    def __len__(self):
        return len(self.weights)


@dataclass(frozen=True)
class SimplexCountResult:
    W: float
    weights: tuple[float, ...]
    exact: int | None
    upper_bound: float

    @property
    def within_bound(self) -> bool | None:
        if self.exact is None:
            return None
        return self.exact <= self.upper_bound * (1 + 1e-9)

    def to_dict(self) -> dict:
        return {
            "W": self.W,
            "weights": list(self.weights),
            "exact": self.exact,
            "upper_bound": self.upper_bound,
            "within_bound": self.within_bound,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SimplexCountResult":
        return cls(d["W"], tuple(d["weights"]), d["exact"], d["upper_bound"])


def _as_weights(weights: WeightVector | Iterable[float]) -> WeightVector:
    return weights if isinstance(weights, WeightVector) else WeightVector(tuple(weights))


def _check_W(W: float) -> float:
    W = float(W)
    if not W >= 0 or not math.isfinite(W):
        raise DomainError(f"W must be finite and non-negative, got {W}")
    return W


def _kmax(acc: float, w: float, W: float) -> int:
    # largest k with fl(acc + fl(k*w)) <= W; assumes acc <= W
    k = math.floor((W - acc) / w)
    while acc + (k + 1) * w <= W:
        k += 1
    while k > 0 and acc + k * w > W:
        k -= 1
    return k


def _count_below(acc: float, W: float, ws: Sequence[float], i: int) -> int:
    # points of coordinates i.. whose running sum from acc stays <= W; ws sorted descending
    n = len(ws)
    w = ws[i]
    if i == n - 1:
        return _kmax(acc, w, W) + 1
    if i == n - 2:
        wl = ws[n - 1]
        total = 0
        for k in range(_kmax(acc, w, W) + 1):
            total += _kmax(acc + k * w, wl, W) + 1
        return total
    total = 0
    for k in range(_kmax(acc, w, W) + 1):
        total += _count_below(acc + k * w, W, ws, i + 1)
        if total > INT64_MAX:
            raise OverflowError("lattice count exceeds 2^63-1")
    return total


def _count_top_slice(args) -> int:
    W, ws, k_lo, k_hi = args
    total = 0
    w = ws[0]
    for k in range(k_lo, k_hi):
        acc = k * w
        if acc > W:
            break
        total += 1 if len(ws) == 1 else _count_below(acc, W, ws, 1)
        if total > INT64_MAX:
            raise OverflowError("lattice count exceeds 2^63-1")
    return total


def count_exact(W: float, weights, workers: int = 1) -> int:
    """Exact N(W; weights) by depth-first enumeration with budget pruning.

    A vector counts when its weighted sum, accumulated left to right over the
    weights in descending order, is <= W in binary64 (ties are inside, no
    epsilon). The top coordinate's range may be split across ``workers``
    processes.
    """
    W = _check_W(W)
    wv = _as_weights(weights)
    # descending weights prune hardest at the top of the tree
    ws = tuple(sorted(wv.weights, reverse=True))
    # the count is at least the simplex volume, so a huge volume means overflow
    log_vol = wv.n * math.log(W) - math.lgamma(wv.n + 1) - sum(map(math.log, ws)) if W > 0 else -math.inf
    if log_vol > math.log(INT64_MAX):
        raise OverflowError("lattice count exceeds 2^63-1")
    top = _kmax(0.0, ws[0], W) + 1
    chunks = [(W, ws, lo, hi) for lo, hi in split_range(0, top, max(1, workers) * 4)]
    total = sum(run_chunks(_count_top_slice, chunks, workers))
    if total > INT64_MAX:
        raise OverflowError("lattice count exceeds 2^63-1")
    return total


def count_upper_bound(W: float, weights) -> float:
    """(W + sum w)^n / (n! * prod w), falling back to log-space for large n."""
    W = _check_W(W)
    ws = _as_weights(weights).weights
    n = len(ws)
    s = W + math.fsum(ws)
    try:
        return s**n / (math.factorial(n) * math.prod(ws))
    except OverflowError:
        pass
    log_val = n * math.log(s) - math.lgamma(n + 1) - math.fsum(map(math.log, ws))
    return math.exp(log_val)  # raises OverflowError only if the bound itself overflows


def poly_bound_constant(weights, delta: float) -> float:
    """Constant c with N(W; weights) <= c * W^n for every W >= delta.

    c = (1 + sum w / delta)^n / (n! prod w), since
    (W + sum w)^n <= W^n (1 + sum w / delta)^n once W >= delta.
    """
    delta = float(delta)
    if not delta > 0:
        raise DomainError(f"delta must be positive, got {delta}")
    ws = _as_weights(weights).weights
    n = len(ws)
    base = 1 + math.fsum(ws) / delta
    try:
        return base**n / (math.factorial(n) * math.prod(ws))
    except OverflowError:
        return math.exp(n * math.log(base) - math.lgamma(n + 1) - math.fsum(map(math.log, ws)))


def simplex_count(W: float, weights, exact: bool = True, workers: int = 1) -> SimplexCountResult:
    wv = _as_weights(weights)
    W = _check_W(W)
    return SimplexCountResult(
        W=W,
        weights=wv.weights,
        exact=count_exact(W, wv, workers) if exact else None,
        upper_bound=count_upper_bound(W, wv),
    )
