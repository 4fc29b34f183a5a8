"""Distinct prime divisors among the first K terms of polynomial and smooth sequences.

    python scripts/census_growth.py [--max-k 5000] [--workers 4]
"""

import argparse

from p1seq.census import prime_census
from p1seq.sequences import SequenceSpec, materialize


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-k", type=int, default=5000)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    specs = {
        "n^2+1": SequenceSpec.polynomial([1, 0, 1], args.max_k),
        "n^2+n+41": SequenceSpec.polynomial([41, 1, 1], args.max_k),
        "2^k-1": SequenceSpec.builtin("mersenne", min(args.max_k, 120)),
        "{2,3,5}-smooth": SequenceSpec.smooth([2, 3, 5], args.max_k),
    }
    for name, spec in specs.items():
        rep = prime_census(materialize(spec), workers=args.workers)
        marks = [k for k in (10, 100, 1000, 10**4, 10**5) if k <= rep.length] + [rep.length]
        curve = ", ".join(f"K={k}: {rep.distinct_at(k)}" for k in sorted(set(marks)))
        extra = f" (incomplete: {len(rep.incomplete_terms)})" if rep.incomplete_terms else ""
        print(f"{name:<16} {curve}{extra}")


if __name__ == "__main__":
    main()
