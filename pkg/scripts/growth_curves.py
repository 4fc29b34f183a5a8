"""Print d_k = ln ln n_k / ln k at decade checkpoints for a few sequences.

    python scripts/growth_curves.py [--terms 30000]

n^2+1 only drops below 0.3 at k = 21562, so run with --terms >= 21562 to
see the crossing.
"""

import argparse

from p1seq.growth_diag import growth_statistic
from p1seq.sequences import SequenceSpec, materialize

SEQUENCES = {
    "n^2+1": SequenceSpec.polynomial([1, 0, 1], 1),
    "n^3-2n+5": SequenceSpec.polynomial([5, -2, 0, 1], 1),
    "identity": SequenceSpec.builtin("identity", 1),
    "{2,3,5}-smooth": SequenceSpec.smooth([2, 3, 5], 1),
    "{2,3}-smooth": SequenceSpec.smooth([2, 3], 1),
}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--terms", type=int, default=30000)
    args = ap.parse_args()
    checkpoints = [k for k in (10, 100, 1000, 10**4, 10**5, 10**6) if k <= args.terms]
    print(f"{'sequence':<16}" + "".join(f"{'k=' + str(k):>14}" for k in checkpoints) + f"{'running inf':>14}")
    for name, spec in SEQUENCES.items():
        spec = SequenceSpec.from_dict({**spec.to_dict(), "count": args.terms})
        rep = growth_statistic(materialize(spec))
        row = "".join(f"{rep.d(k):>14.6f}" for k in checkpoints)
        print(f"{name:<16}{row}{rep.running_inf[-1]:>14.6f}")
        if name == "n^2+1":
            below = next((k for k, _, d in rep.entries if k >= 100 and d < 0.3), None)
            print(f"{'':<16}first k >= 100 with d_k < 0.3: {below}")


if __name__ == "__main__":
    main()
