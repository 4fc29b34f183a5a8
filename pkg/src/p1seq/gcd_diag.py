"""Gcd-window hypothesis, valuation index sets and the spacing/counting argument.

Naming: ``window_L`` / ``l`` is the pair offset (gcd(n_k, n_{k+l}) < m_l);
the number of primes with unbounded valuation is called
``unbounded_prime_count`` wherever it appears.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from ._parallel import run_chunks, split_range
from .arith import is_prime, nu
from .errors import DomainError
from .sequences import SequencePrefix
from .smooth import PrimeSet


@dataclass(frozen=True)
class BoundSequence:
    """Strictly increasing positive m_1, m_2, ...

    Either explicit ``values`` or the closed form m_l = l + offset.
    """

    values: tuple[int, ...] = ()
    offset: int | None = None

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if self.offset is not None:
            if vals:
                raise DomainError("give either explicit values or a linear offset, not both")
            if self.offset < 0:
                raise DomainError(f"linear offset must be >= 0 so m_1 >= 1, got {self.offset}")
            return
        if not vals:
            raise DomainError("bound sequence is empty")
        if vals[0] < 1:
            raise DomainError(f"m_1 must be positive, got {vals[0]}")
        for i in range(1, len(vals)):
            if vals[i] <= vals[i - 1]:
                raise DomainError(
                    f"bound sequence must be strictly increasing: m_{i + 1}={vals[i]} <= m_{i}={vals[i - 1]}"
                )

    @classmethod
    def linear(cls, c: int) -> "BoundSequence":
        return cls(offset=c)

    @classmethod
    def from_file(cls, path) -> "BoundSequence":
        vals = []
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if line and not line.startswith("#"):
                    vals.append(int(line))
        return cls(tuple(vals))

    def __len__(self):
        return len(self.values) if self.offset is None else 2**63 - 1

    def __call__(self, l: int) -> int:
        if l < 1:
            raise DomainError(f"bound index must be >= 1, got {l}")
        if self.offset is not None:
            return l + self.offset
        if l > len(self.values):
            raise DomainError(f"m_{l} requested but only {len(self.values)} values given")
        return self.values[l - 1]

    def describe(self) -> str:
        return f"linear:{self.offset}" if self.offset is not None else f"explicit[{len(self.values)}]"

    def to_dict(self) -> dict:
        return {"offset": self.offset} if self.offset is not None else {"values": list(self.values)}

    @classmethod
    def from_dict(cls, d: dict) -> "BoundSequence":
        return cls(tuple(d.get("values", ())), d.get("offset"))


def _as_bound(m) -> BoundSequence:
    return m if isinstance(m, BoundSequence) else BoundSequence(tuple(m))


# --- hypothesis ------------------------------------------------------------

@dataclass(frozen=True)
class GcdHypothesisReport:
    window_L: int
    pairs_checked: int
    violations: tuple[tuple[int, int, int, int], ...]  # (k, l, gcd, m_l)

    @property
    def holds(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "window_L": self.window_L,
            "pairs_checked": self.pairs_checked,
            "holds": self.holds,
            "violations": [{"k": k, "l": l, "gcd": g, "m_l": m} for k, l, g, m in self.violations],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "GcdHypothesisReport":
        v = tuple((x["k"], x["l"], x["gcd"], x["m_l"]) for x in d["violations"])
        return cls(d["window_L"], d["pairs_checked"], v)


def _scan_pairs(args):
    terms, ms, k_lo, k_hi = args
    N = len(terms)
    found = []
    checked = 0
    for k in range(k_lo, k_hi):
        a = terms[k - 1]
        for l, m_l in enumerate(ms, start=1):
            if k + l > N:
                break
            checked += 1
            g = math.gcd(a, terms[k + l - 1])
            if g >= m_l:
                found.append((k, l, g, m_l))
    return checked, found


def verify_gcd_hypothesis(prefix: SequencePrefix, m, window_L: int, workers: int = 1) -> GcdHypothesisReport:
    """Check gcd(n_k, n_{k+l}) < m_l for all 1 <= l <= window_L, k + l <= len(prefix)."""
    if window_L < 1:
        raise DomainError(f"window must be >= 1, got {window_L}")
    m = _as_bound(m)
    terms = prefix.terms
    if len(terms) <= window_L:
        raise DomainError(f"prefix length {len(terms)} must exceed window {window_L}")
    ms = tuple(m(l) for l in range(1, window_L + 1))
    chunks = [(terms, ms, lo, hi) for lo, hi in split_range(1, len(terms), max(1, workers) * 4)]
    checked = 0
    violations = []
    for c, found in run_chunks(_scan_pairs, chunks, workers):
        checked += c
        violations.extend(found)
    violations.sort(key=lambda v: (v[0], v[1]))
    return GcdHypothesisReport(window_L, checked, tuple(violations))


def choose_M(m, l: int) -> int:
    """Least M with 2**M > m_l."""
    return _as_bound(m)(l).bit_length()


# --- index sets and spacing ------------------------------------------------

@dataclass(frozen=True)
class IndexSet:
    prime: int
    threshold_M: int
    indices: tuple[int, ...]

    def __len__(self):
        return len(self.indices)

    def count_upto(self, N: int) -> int:
        return bisect_right(self.indices, N)

    def to_dict(self) -> dict:
        return {"prime": self.prime, "threshold_M": self.threshold_M, "indices": list(self.indices)}

    @classmethod
    def from_dict(cls, d: dict) -> "IndexSet":
        return cls(d["prime"], d["threshold_M"], tuple(d["indices"]))


def index_set(prefix: SequencePrefix, p: int, M: int) -> IndexSet:
    """Indices k with nu_p(n_k) > M."""
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if M < 0:
        raise DomainError(f"M must be >= 0, got {M}")
    q = p ** (M + 1)
    return IndexSet(p, M, tuple(k for k, n in enumerate(prefix.terms, start=1) if n % q == 0))


class SpacingResult(NamedTuple):
    min_gap: int | None
    passed: bool


def spacing_check(A: IndexSet | Sequence[int], l: int) -> SpacingResult:
    idx = A.indices if isinstance(A, IndexSet) else tuple(A)
    if len(idx) < 2:
        return SpacingResult(None, True)
    gap = min(b - a for a, b in zip(idx, idx[1:]))
    return SpacingResult(gap, gap > l)


def packed_count_bound(N: int, l: int) -> int:
    """Most elements a set with consecutive gaps > l can have in {1..N}, as the
    counting argument states it: floor(N/(l+1)) + 1."""
    return N // (l + 1) + 1


def counting_check(A: IndexSet, l: int, N_max: int) -> int | None:
    """First N <= N_max with |A ∩ [1,N]| > floor(N/(l+1)) + 1, or None."""
    c = 0
    members = set(A.indices)
    for N in range(1, N_max + 1):
        c += N in members
        if c > packed_count_bound(N, l):
            return N
    return None


# --- Delta(N) --------------------------------------------------------------

class DeltaBound(NamedTuple):
    delta: int
    lower: float

    def tight(self, N: int, l: int) -> bool:
        """Equality delta == N/(l+1) - l, decided in exact rationals."""
        return Fraction(self.delta) == Fraction(N, l + 1) - l


def delta_bound(N: int, l: int) -> DeltaBound:
    """Delta(N) = N - l(floor(N/(l+1)) + 1) with its linear lower bound N/(l+1) - l.

    delta >= lower always; equality holds exactly when (l+1) divides N, so
    the bound is not strict.
    """
    if N < 1 or l < 1:
        raise DomainError(f"delta_bound needs N >= 1 and l >= 1, got N={N}, l={l}")
    return DeltaBound(N - l * (N // (l + 1) + 1), N / (l + 1) - l)


def delta_table(l: int, Ns: Iterable[int]) -> list[dict]:
    out = []
    for N in Ns:
        d = delta_bound(N, l)
        out.append({"N": N, "delta": d.delta, "lower": d.lower, "tight": d.tight(N, l)})
    return out


def delta_divergence_probe(l: int, j_max: int, step: int = 10) -> dict:
    """Evidence that Delta(N) -> infinity along N = step*j, j <= j_max.

    Consecutive values need not increase (for l = 6, step 10 they alternate
    up and down), but shifting j by l+1 adds exactly step*(l+1) - step*l = step,
    so the sequence increases strictly along every residue class of j mod l+1.
    """
    vals = [delta_bound(step * j, l).delta for j in range(1, j_max + 1)]
    consecutive = all(a <= b for a, b in zip(vals, vals[1:]))
    blockwise = all(vals[i + l + 1] > vals[i] for i in range(len(vals) - l - 1))
    return {
        "l": l,
        "step": step,
        "j_max": j_max,
        "consecutive_nondecreasing": consecutive,
        "blockwise_increasing": blockwise,
        "last": vals[-1] if vals else None,
        "min_second_half": min(vals[len(vals) // 2 :]) if vals else None,
    }


# --- partition -------------------------------------------------------------

@dataclass(frozen=True)
class PartitionReport:
    M: int
    unbounded_primes: tuple[int, ...]
    residual_indices: tuple[int, ...]
    covered: bool
    residual_growth: tuple[tuple[int, int], ...]  # (prefix length, residual count)
    residual_bounded: bool
    valuation_trajectories: dict = field(default_factory=dict)  # prime -> ((k, running max nu), ...)

    def to_dict(self) -> dict:
        return {
            "M": self.M,
            "unbounded_primes": list(self.unbounded_primes),
            "residual_indices": list(self.residual_indices),
            "covered": self.covered,
            "residual_growth": [{"N": n, "count": c} for n, c in self.residual_growth],
            "residual_bounded": self.residual_bounded,
            "valuation_trajectories": {
                str(p): [{"k": k, "max_nu": v} for k, v in traj]
                for p, traj in sorted(self.valuation_trajectories.items())
            },
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PartitionReport":
        return cls(
            d["M"], tuple(d["unbounded_primes"]), tuple(d["residual_indices"]), d["covered"],
            tuple((x["N"], x["count"]) for x in d["residual_growth"]), d["residual_bounded"],
            {int(p): tuple((x["k"], x["max_nu"]) for x in traj) for p, traj in d["valuation_trajectories"].items()},
        )


def _check_smooth(n: int, k: int, primes: Sequence[int]):
    for p in primes:
        while n % p == 0:
            n //= p
    if n != 1:
        raise DomainError(f"sequence not S-smooth: term {k} has cofactor {n} outside S")


def partition_check(prefix: SequencePrefix, S, unbounded_primes: Iterable[int], M: int) -> PartitionReport:
    """Split indices into the sets nu_p(n_k) > M (p unbounded) and the residual.

    ``residual_bounded`` is an empirical finiteness probe: true when the
    residual count did not grow over the second half of the prefix.
    """
    S = S if isinstance(S, PrimeSet) else PrimeSet.of(S)
    unbounded = tuple(sorted(set(unbounded_primes)))
    for p in unbounded:
        if p not in S:
            raise DomainError(f"unbounded prime {p} is not in S")
    if M < 0:
        raise DomainError(f"M must be >= 0, got {M}")
    terms = prefix.terms
    for k, n in enumerate(terms, start=1):
        _check_smooth(n, k, S.primes)
    sets = [set(index_set(prefix, p, M).indices) for p in unbounded]
    covered_by_sets = set().union(*sets) if sets else set()
    N = len(terms)
    residual = tuple(k for k in range(1, N + 1) if k not in covered_by_sets)
    covered = covered_by_sets.union(residual) == set(range(1, N + 1))

    checkpoints = sorted({max(1, N // 4), max(1, N // 2), N}) if N else []
    growth = tuple((c, sum(1 for k in residual if k <= c)) for c in checkpoints)
    bounded = len(growth) < 2 or growth[-1][1] == dict(growth).get(max(1, N // 2), growth[-1][1])

    trajectories = {}
    for p in S.primes:
        best, traj = -1, []
        for k, n in enumerate(terms, start=1):
            v = nu(p, n)
            if v > best:
                best = v
                traj.append((k, v))
        trajectories[p] = tuple(traj)
    return PartitionReport(M, unbounded, residual, covered, growth, bounded, trajectories)
