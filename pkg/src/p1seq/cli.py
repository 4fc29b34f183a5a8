"""Batch command-line front end.

    p1seq smooth-count --primes 2,3 --limit 10
    p1seq bound-check --weights 1,1 --W 2
    p1seq gcd-check --builtin fermat --count 12 --m linear:1 --window 5

Exit status: 0 success, 2 invalid input, 3 resource cap exceeded.
Reports go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from dataclasses import dataclass

from ._parallel import default_workers
from .census import prime_census
from .errors import DomainError, ResourceError
from .gcd_diag import (
    BoundSequence,
    choose_M,
    counting_check,
    delta_table,
    index_set,
    partition_check,
    spacing_check,
    verify_gcd_hypothesis,
)
from .growth_diag import growth_statistic, smooth_lower_bound_check
from .sequences import BUILTINS, SequenceSpec, materialize
from .simplex_count import poly_bound_constant, simplex_count
from .smooth import PrimeSet, count_smooth, reduction_check

SCHEMA_VERSION = 1
SUBCOMMANDS = ("census", "growth", "gcd-check", "smooth-count", "bound-check", "spacing")

log = logging.getLogger("p1seq")


class CliError(Exception):
    """Invalid flag value; the message names the flag."""

    def __init__(self, flag: str, message: str):
        super().__init__(f"{flag}: {message}")
        self.flag = flag


@dataclass
class RunReport:
    subcommand: str
    config: dict
    result: dict

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "subcommand": self.subcommand,
            "config": self.config,
            "result": self.result,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "RunReport":
        if d.get("schema_version") != SCHEMA_VERSION:
            raise DomainError(f"unsupported schema_version {d.get('schema_version')!r}")
        return cls(d["subcommand"], d["config"], d["result"])

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"


# --- flag parsing helpers ----------------------------------------------------

def _int_list(flag: str, text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise CliError(flag, f"expected comma-separated integers, got {text!r}") from None


def _float_list(flag: str, text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise CliError(flag, f"expected comma-separated numbers, got {text!r}") from None


def _primeset(flag: str, text: str) -> PrimeSet:
    try:
        return PrimeSet(tuple(_int_list(flag, text)))
    except DomainError as e:
        raise CliError(flag, str(e)) from None


def _bound_sequence(text: str) -> BoundSequence:
    kind, _, arg = text.partition(":")
    try:
        if kind == "linear":
            return BoundSequence.linear(int(arg))
        if kind == "file":
            return BoundSequence.from_file(arg)
        if kind == "list":
            return BoundSequence(tuple(_int_list("--m", arg)))
    except (ValueError, OSError, DomainError) as e:
        raise CliError("--m", str(e)) from None
    raise CliError("--m", f"expected linear:c, file:path or list:a,b,..., got {text!r}")


def _sequence_spec(args) -> SequenceSpec:
    sources = [f for f, v in (("--poly", args.poly), ("--file", args.file),
                              ("--builtin", args.builtin), ("--smooth-primes", args.smooth_primes)) if v]
    if len(sources) != 1:
        raise CliError("--poly/--file/--builtin/--smooth-primes",
                       f"exactly one sequence source required, got {len(sources)}")
    flag = sources[0]
    if args.count is not None and args.count < 1:
        raise CliError("--count", f"must be >= 1, got {args.count}")
    if args.start is not None and args.start < 0:
        raise CliError("--start", f"must be >= 0, got {args.start}")
    try:
        if args.poly:
            return SequenceSpec.polynomial(_int_list("--poly", args.poly), args.count or 100,
                                           1 if args.start is None else args.start)
        if args.builtin:
            return SequenceSpec.builtin(args.builtin, args.count or 10, args.start)
        if args.smooth_primes:
            return SequenceSpec.smooth(_primeset("--smooth-primes", args.smooth_primes).primes, args.count or 100)
        return SequenceSpec.file(args.file, args.count)
    except DomainError as e:
        raise CliError(flag, str(e)) from None


def _load_prefix(args):
    spec = _sequence_spec(args)
    try:
        prefix = materialize(spec)
    except OSError as e:
        raise CliError("--file", str(e)) from None
    except DomainError as e:
        raise CliError("--file" if spec.kind == "file" else "sequence", str(e)) from None
    if prefix.origin.get("start_shifted"):
        log.warning("start index raised from %s to %s (sequence eventually increasing from there)",
                    prefix.origin["requested_start"], prefix.origin["effective_start"])
    return spec, prefix


def _require(args, *flags):
    for f in flags:
        if getattr(args, f.lstrip("-").replace("-", "_")) is None:
            raise CliError(f, f"required for {args.subcommand}")


# --- subcommands -----------------------------------------------------------

def _cmd_census(args, workers):
    spec, prefix = _load_prefix(args)
    rep = prime_census(prefix, workers=workers)
    rows = [{"k": k, "distinct_primes": c} for k, c in rep.growth_curve]
    return {"sequence": spec.to_dict()}, rep.to_dict(), rows


def _cmd_growth(args, workers):
    spec, prefix = _load_prefix(args)
    rep = growth_statistic(prefix, threshold=args.threshold)
    rows = [{"k": k, "n_k": n, "d_k": d, "running_inf": r}
            for (k, n, d), r in zip(rep.entries, rep.running_inf)]
    return {"sequence": spec.to_dict(), "threshold": args.threshold}, rep.to_dict(), rows


def _cmd_gcd_check(args, workers):
    _require(args, "--m", "--window")
    if args.window < 1:
        raise CliError("--window", f"must be >= 1, got {args.window}")
    m = _bound_sequence(args.m)
    spec, prefix = _load_prefix(args)
    if len(prefix) <= args.window:
        raise CliError("--count", f"prefix length {len(prefix)} must exceed --window {args.window}")
    try:
        rep = verify_gcd_hypothesis(prefix, m, args.window, workers=workers)
    except DomainError as e:
        raise CliError("--m", str(e)) from None
    rows = rep.to_dict()["violations"]
    config = {"sequence": spec.to_dict(), "m": args.m, "window": args.window}
    return config, rep.to_dict(), rows


def _cmd_smooth_count(args, workers):
    _require(args, "--primes", "--limit")
    S = _primeset("--primes", args.primes)
    if args.limit < 1:
        raise CliError("--limit", f"must be >= 1, got {args.limit}")
    config = {"primes": list(S.primes), "limit": args.limit, "compare_lattice": args.compare_lattice}
    if args.compare_lattice:
        result = reduction_check(S, args.limit, workers=workers).to_dict()
        result["count"] = result["integer_count"]
    else:
        result = {"primes": list(S.primes), "limit": args.limit,
                  "count": count_smooth(S, args.limit, workers=workers)}
    return config, result, [result]


def _cmd_bound_check(args, workers):
    if args.weights is not None:
        _require(args, "--W")
        ws = _float_list("--weights", args.weights)
        try:
            res = simplex_count(args.W, ws, workers=workers)
        except DomainError as e:
            raise CliError("--weights/--W", str(e)) from None
        result = res.to_dict()
        result["pass"] = result.pop("within_bound")
        config = {"weights": ws, "W": args.W, "delta": args.delta}
        if args.delta is not None:
            try:
                c = poly_bound_constant(ws, args.delta)
            except DomainError as e:
                raise CliError("--delta", str(e)) from None
            result["poly_constant"] = c
            result["poly_bound"] = c * args.W ** len(ws) if args.W >= args.delta else None
        return config, result, [result]
    if args.primes is not None:
        _require(args, "--K")
        S = _primeset("--primes", args.primes)
        if args.K < 2:
            raise CliError("--K", f"must be >= 2, got {args.K}")
        rep = smooth_lower_bound_check(S, args.K)
        return {"primes": list(S.primes), "K": args.K}, rep.to_dict(), rep.to_dict()["rows"]
    raise CliError("--weights/--primes", "bound-check needs --weights with --W, or --primes with --K")


def _cmd_spacing(args, workers):
    _require(args, "--prime", "--offset")
    if args.offset < 1:
        raise CliError("--offset", f"must be >= 1, got {args.offset}")
    if (args.M is None) == (args.m is None):
        raise CliError("--M/--m", "give exactly one of --M or --m")
    if args.M is not None:
        if args.M < 0:
            raise CliError("--M", f"must be >= 0, got {args.M}")
        M = args.M
    else:
        try:
            M = choose_M(_bound_sequence(args.m), args.offset)
        except DomainError as e:
            raise CliError("--m", str(e)) from None
    primes = _int_list("--prime", args.prime)
    spec, prefix = _load_prefix(args)
    sets = []
    rows = []
    for p in sorted(set(primes)):
        try:
            A = index_set(prefix, p, M)
        except DomainError as e:
            raise CliError("--prime", str(e)) from None
        sp = spacing_check(A, args.offset)
        bad_N = counting_check(A, args.offset, len(prefix))
        entry = A.to_dict()
        entry.update(min_gap=sp.min_gap, spacing_pass=sp.passed, counting_first_violation=bad_N)
        sets.append(entry)
        rows.append({"prime": p, "M": M, "size": len(A), "min_gap": sp.min_gap,
                     "spacing_pass": sp.passed, "counting_first_violation": bad_N})
    N = len(prefix)
    result = {
        "M": M,
        "offset": args.offset,
        "index_sets": sets,
        "delta_table": delta_table(args.offset, sorted({1, max(1, N // 4), max(1, N // 2), N})),
    }
    config = {"sequence": spec.to_dict(), "primes": sorted(set(primes)), "offset": args.offset,
              "M": args.M, "m": args.m, "S": args.S, "unbounded": args.unbounded}
    if args.S is not None:
        S = _primeset("--S", args.S)
        unbounded = _int_list("--unbounded", args.unbounded) if args.unbounded else sorted(set(primes))
        try:
            result["partition"] = partition_check(prefix, S, unbounded, M).to_dict()
        except DomainError as e:
            raise CliError("--S/--unbounded", str(e)) from None
    return config, result, rows


COMMANDS = {
    "census": _cmd_census,
    "growth": _cmd_growth,
    "gcd-check": _cmd_gcd_check,
    "smooth-count": _cmd_smooth_count,
    "bound-check": _cmd_bound_check,
    "spacing": _cmd_spacing,
}


# --- output ----------------------------------------------------------------

def _emit_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    if rows:
        fields = list(rows[0].keys())
        w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n", extrasaction="ignore")
        w.writeheader()
        for r in rows:
            w.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in r.items()})
    return buf.getvalue()


def _emit_text(report: RunReport) -> str:
    lines = [f"{report.subcommand}"]
    for key, val in sorted(report.result.items()):
        if isinstance(val, list) and len(val) > 8:
            val = f"[{len(val)} items]"
        lines.append(f"  {key}: {val}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=("json", "csv", "text"), default="json")
    common.add_argument("--threads", type=int, default=None, help="worker processes (default: CPU count)")
    common.add_argument("--seed", type=int, default=None, help="accepted for compatibility; unused")
    common.add_argument("-v", "--verbose", action="store_true")

    seq = argparse.ArgumentParser(add_help=False)
    seq.add_argument("--poly", help="integer coefficients, ascending degree, e.g. 1,0,1 for n^2+1")
    seq.add_argument("--file", help="sequence file: one positive integer per line")
    seq.add_argument("--builtin", choices=BUILTINS)
    seq.add_argument("--smooth-primes", help="ascending S-smooth numbers >= 2 for the prime set S")
    seq.add_argument("--start", type=int, default=None)
    seq.add_argument("--count", type=int, default=None)

    p = argparse.ArgumentParser(prog="p1seq", description="Diagnostics for prime divisors of integer sequences.")
    sub = p.add_subparsers(dest="subcommand", required=True)

    sub.add_parser("census", parents=[common, seq], help="distinct primes dividing the prefix")

    g = sub.add_parser("growth", parents=[common, seq], help="ln ln n_k / ln k and its running infimum")
    g.add_argument("--threshold", type=float, default=0.05)

    g = sub.add_parser("gcd-check", parents=[common, seq], help="gcd(n_k, n_{k+l}) < m_l over a window")
    g.add_argument("--m", help="linear:c (m_l = l + c), file:path or list:a,b,...")
    g.add_argument("--window", type=int)

    g = sub.add_parser("smooth-count", parents=[common], help="count S-smooth numbers up to a limit")
    g.add_argument("--primes")
    g.add_argument("--limit", type=int)
    g.add_argument("--compare-lattice", action="store_true", help="also count lattice points in log space")

    g = sub.add_parser("bound-check", parents=[common], help="lattice count vs upper bound, or k <= a (ln n_k)^n")
    g.add_argument("--weights")
    g.add_argument("--W", type=float)
    g.add_argument("--delta", type=float)
    g.add_argument("--primes")
    g.add_argument("--K", type=int)

    g = sub.add_parser("spacing", parents=[common, seq], help="valuation index sets and their spacing")
    g.add_argument("--prime", help="comma-separated primes")
    g.add_argument("--offset", type=int, help="pair offset l")
    g.add_argument("--M", type=int)
    g.add_argument("--m", help="bound sequence; M is then the least value with 2^M > m_offset")
    g.add_argument("--S", help="prime set for the partition check")
    g.add_argument("--unbounded", help="primes treated as having unbounded valuation (default: --prime)")
    return p


def run(argv: list[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    if args.threads is not None and args.threads < 1:
        print("error: --threads: must be >= 1", file=sys.stderr)
        return 2
    workers = args.threads or default_workers()
    try:
        config, result, rows = COMMANDS[args.subcommand](args, workers)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except DomainError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (ResourceError, OverflowError) as e:
        print(f"error: resource limit: {e}", file=sys.stderr)
        return 3
    report = RunReport(args.subcommand, config, result)
    if args.output == "json":
        stdout.write(report.to_json())
    elif args.output == "csv":
        stdout.write(_emit_csv(rows))
    else:
        stdout.write(_emit_text(report))
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
