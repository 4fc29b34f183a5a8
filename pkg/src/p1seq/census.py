"""Prime census: which primes divide at least one term of a prefix."""

from __future__ import annotations

from dataclasses import dataclass

from ._parallel import run_chunks, split_range
from .arith import factorize
from .errors import IncompleteFactorizationError
from .sequences import SequencePrefix


@dataclass(frozen=True)
class CensusReport:
    primes_found: tuple[int, ...]
    growth_curve: tuple[tuple[int, int], ...]  # sparse: (k, distinct primes among n_1..n_k) at change points
    incomplete_terms: tuple[int, ...]
    length: int

    def distinct_at(self, k: int) -> int:
        """Distinct primes among the first k terms, read off the sparse curve."""
        out = 0
        for idx, c in self.growth_curve:
            if idx > k:
                break
            out = c
        return out

    def to_dict(self) -> dict:
        return {
            "length": self.length,
            "distinct_primes": len(self.primes_found),
            "primes_found": list(self.primes_found),
            "growth_curve": [{"k": k, "count": c} for k, c in self.growth_curve],
            "incomplete_terms": list(self.incomplete_terms),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CensusReport":
        return cls(
            tuple(d["primes_found"]),
            tuple((x["k"], x["count"]) for x in d["growth_curve"]),
            tuple(d["incomplete_terms"]),
            d["length"],
        )


def _factor_slice(args):
    terms, lo, hi, trial_bound = args
    out = []
    for k in range(lo, hi):
        try:
            out.append((k, factorize(terms[k - 1], trial_bound).primes, False))
        except IncompleteFactorizationError as e:
            # keep what was found; the unsplit cofactor is dropped
            out.append((k, e.partial.primes, True))
    return out


def prime_census(prefix: SequencePrefix, workers: int = 1, trial_bound: int = 100_000) -> CensusReport:
    terms = prefix.terms if isinstance(prefix, SequencePrefix) else tuple(prefix)
    N = len(terms)
    chunks = [(terms, lo, hi, trial_bound) for lo, hi in split_range(1, N + 1, max(1, workers) * 4)]
    seen: set[int] = set()
    curve = []
    incomplete = []
    for part in run_chunks(_factor_slice, chunks, workers):
        for k, primes, partial in part:
            before = len(seen)
            seen.update(primes)
            if partial:
                incomplete.append(k)
            if len(seen) != before or k == 1:
                curve.append((k, len(seen)))
    return CensusReport(tuple(sorted(seen)), tuple(curve), tuple(incomplete), N)
