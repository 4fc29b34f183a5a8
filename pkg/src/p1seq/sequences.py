"""Sequence sources and the validated finite prefix type."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .errors import DomainError, ValidationError
from .smooth import PrimeSet, first_smooth

BUILTINS = ("mersenne", "fermat", "factorial-plus-one", "identity")
KINDS = ("polynomial", "file", "builtin", "smooth")

# least admissible index per builtin family
_BUILTIN_MIN_START = {"mersenne": 2, "fermat": 0, "factorial-plus-one": 1, "identity": 1}


@dataclass(frozen=True)
class SequenceSpec:
    """Declarative description of a sequence prefix.

    ``coefficients`` are in ascending degree. ``start_index`` of None picks the
    family default (1, except fermat 0 and mersenne 2).
    """

    kind: str
    count: int
    start_index: int | None = None
    coefficients: tuple[int, ...] = ()
    path: str | None = None
    name: str | None = None
    primes: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(int(c) for c in self.coefficients))
        object.__setattr__(self, "primes", tuple(int(p) for p in self.primes))
        if self.kind not in KINDS:
            raise DomainError(f"unknown sequence kind {self.kind!r}")
        if self.count < 1:
            raise DomainError(f"count must be >= 1, got {self.count}")
        if self.start_index is not None and self.start_index < 0:
            raise DomainError(f"start index must be >= 0, got {self.start_index}")
        if self.kind == "polynomial":
            cs = _trim(self.coefficients)
            if len(cs) < 2:
                raise DomainError("polynomial must be non-constant (degree >= 1)")
            if cs[-1] <= 0:
                raise DomainError("polynomial leading coefficient must be positive")
            object.__setattr__(self, "coefficients", cs)
        elif self.kind == "builtin" and self.name not in BUILTINS:
            raise DomainError(f"unknown builtin {self.name!r}; choose from {', '.join(BUILTINS)}")
        elif self.kind == "smooth":
            PrimeSet(self.primes)
        elif self.kind == "file" and not self.path:
            raise DomainError("file sequence needs a path")

    @classmethod
    def polynomial(cls, coefficients: Sequence[int], count: int, start: int = 1) -> "SequenceSpec":
        return cls("polynomial", count, start, coefficients=tuple(coefficients))

    @classmethod
    def builtin(cls, name: str, count: int, start: int | None = None) -> "SequenceSpec":
        return cls("builtin", count, start, name=name)

    @classmethod
    def smooth(cls, primes: Iterable[int], count: int) -> "SequenceSpec":
        return cls("smooth", count, None, primes=tuple(sorted(set(primes))))

    @classmethod
    def file(cls, path: str | Path, count: int | None = None) -> "SequenceSpec":
        return cls("file", count or 2**63 - 1, None, path=str(path))

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "count": self.count, "start_index": self.start_index}
        if self.kind == "polynomial":
            d["coefficients"] = list(self.coefficients)
        elif self.kind == "builtin":
            d["name"] = self.name
        elif self.kind == "smooth":
            d["primes"] = list(self.primes)
        else:
            d["path"] = self.path
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "SequenceSpec":
        return cls(
            d["kind"], d["count"], d.get("start_index"),
            coefficients=tuple(d.get("coefficients", ())), path=d.get("path"),
            name=d.get("name"), primes=tuple(d.get("primes", ())),
        )


@dataclass(frozen=True)
class SequencePrefix:
    """Strictly increasing positive terms n_1, n_2, ... (1-based indexing)."""

    terms: tuple[int, ...]
    origin: dict = field(default_factory=dict, compare=False)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def term(self, k: int) -> int:
        return self.terms[k - 1]

    def to_dict(self) -> dict:
        return {"terms": list(self.terms), "origin": self.origin}

    @classmethod
    def from_dict(cls, d: dict) -> "SequencePrefix":
        return validate_increasing(d["terms"], d.get("origin", {}))


def validate_increasing(terms: Iterable[int], origin: dict | None = None) -> SequencePrefix:
    """Check positivity and strict increase; errors carry the 1-based position."""
    out = []
    prev = 0
    for i, t in enumerate(terms, start=1):
        if isinstance(t, bool) or not isinstance(t, int):
            raise ValidationError(f"term {i} is not an integer: {t!r}", i)
        if t < 1:
            raise ValidationError(f"term {i} is not positive: {t}", i)
        if t <= prev:
            raise ValidationError(f"term {i} ({t}) does not exceed term {i - 1} ({prev})", i)
        out.append(t)
        prev = t
    return SequencePrefix(tuple(out), dict(origin or {}))


# --- polynomials -----------------------------------------------------------

def _trim(cs: Sequence[int]) -> tuple[int, ...]:
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def poly_eval(cs: Sequence[int], x: int) -> int:
    acc = 0
    for c in reversed(cs):
        acc = acc * x + c
    return acc


def _forward_difference(cs: Sequence[int]) -> tuple[int, ...]:
    # coefficients of P(x+1) - P(x)
    d = len(cs) - 1
    shifted = [0] * (d + 1)
    for i, c in enumerate(cs):
        for j in range(i + 1):
            shifted[j] += c * math.comb(i, j)
    return _trim([a - b for a, b in zip(shifted, cs)])


def _cauchy_bound(cs: Sequence[int]) -> int:
    """Integer B with every real root of the polynomial in (-B, B)."""
    lead = abs(cs[-1])
    return 1 + max(-(-abs(c) // lead) for c in cs[:-1]) + 1 if len(cs) > 1 else 1


def _poly_rem(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = a[:]
    while len(a) >= len(b) and any(a):
        coef = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, bc in enumerate(b):
            a[i + shift] -= coef * bc
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return a


def _sturm_chain(cs: Sequence[int]) -> list[list[Fraction]]:
    p0 = [Fraction(c) for c in cs]
    p1 = [Fraction(i * c) for i, c in enumerate(cs)][1:]
    chain = [p0, p1]
    while len(chain[-1]) > 1:
        r = _poly_rem(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-c for c in r])
    return chain


def _sign_changes(chain, x: int) -> int:
    signs = []
    for q in chain:
        v = sum(c * x**i for i, c in enumerate(q))
        if v != 0:
            signs.append(v > 0)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _root_brackets(cs: Sequence[int]) -> list[int]:
    """Integers x such that (x-1, x] contains a real root, found by bisecting
    [-B, B] with Sturm counts of distinct roots in (a, b]."""
    chain = _sturm_chain(cs)
    B = _cauchy_bound(cs)
    out = []

    def roots_in(a, b):
        return _sign_changes(chain, a) - _sign_changes(chain, b)

    def bisect(a, b):
        # roots in (a, b]
        if roots_in(a, b) == 0:
            return
        if b - a == 1:
            out.append(b)
            return
        mid = (a + b) // 2
        bisect(a, mid)
        bisect(mid, b)

    bisect(-B, B)
    return out


def eventual_start(cs: Sequence[int], requested: int) -> int:
    """Least n0 >= requested with P(n) >= 1 and P(n+1) > P(n) for every n >= n0."""
    cs = _trim(cs)
    diff = _forward_difference(cs)

    def bad(n: int) -> bool:
        return poly_eval(cs, n) < 1 or poly_eval(diff, n) <= 0

    # Any failing n has a real root r >= n of P or of the difference with the
    # polynomial <= 0 on [n, r], so floor(r) fails too: checking the integers
    # bracketing each root finds the largest failing integer.
    candidates = []
    for poly in (cs, diff):
        if len(poly) >= 2:
            for x in _root_brackets(poly):
                candidates.extend((x - 1, x))
    worst = max((c for c in candidates if bad(c)), default=None)
    return requested if worst is None else max(requested, worst + 1)


# --- materialization -------------------------------------------------------

def _builtin_term(name: str, k: int) -> int:
    if name == "mersenne":
        return 2**k - 1
    if name == "fermat":
        return 2 ** (2**k) + 1
    if name == "factorial-plus-one":
        return math.factorial(k) + 1
    return k


def read_sequence_file(path: str | Path, limit: int | None = None, origin: dict | None = None) -> SequencePrefix:
    """Read one base-10 positive integer per line; '#' lines and blank lines are skipped.

    Validation errors report the offending file line number.
    """
    terms = []
    prev = 0
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            try:
                t = int(line, 10)
            except ValueError:
                raise ValidationError(f"{path}:{lineno}: not a base-10 integer: {line!r}", lineno) from None
            if t < 1:
                raise ValidationError(f"{path}:{lineno}: term is not positive: {t}", lineno)
            if t <= prev:
                raise ValidationError(f"{path}:{lineno}: term {t} does not exceed previous term {prev}", lineno)
            terms.append(t)
            prev = t
            if limit is not None and len(terms) >= limit:
                break
    return SequencePrefix(tuple(terms), dict(origin or {"kind": "file", "path": str(path)}))


def write_sequence_file(prefix: SequencePrefix | Iterable[int], path: str | Path, comment: str | None = None):
    terms = prefix.terms if isinstance(prefix, SequencePrefix) else tuple(prefix)
    with open(path, "w", encoding="utf-8") as fh:
        if comment:
            for line in comment.splitlines():
                fh.write(f"# {line}\n")
        for t in terms:
            fh.write(f"{t}\n")


def materialize(spec: SequenceSpec) -> SequencePrefix:
    """Evaluate a SequenceSpec into a validated prefix.

    Polynomial starts are raised into the region where P is positive and
    strictly increasing; the shift is recorded in ``origin``.
    """
    origin = spec.to_dict()
    if spec.kind == "polynomial":
        requested = 1 if spec.start_index is None else spec.start_index
        n0 = eventual_start(spec.coefficients, requested)
        origin.update(requested_start=requested, effective_start=n0, start_shifted=n0 != requested)
        terms = [poly_eval(spec.coefficients, n) for n in range(n0, n0 + spec.count)]
    elif spec.kind == "builtin":
        lo = _BUILTIN_MIN_START[spec.name]
        requested = lo if spec.start_index is None else spec.start_index
        start = max(requested, lo)
        origin.update(requested_start=requested, effective_start=start, start_shifted=start != requested)
        terms = [_builtin_term(spec.name, k) for k in range(start, start + spec.count)]
    elif spec.kind == "smooth":
        terms = first_smooth(PrimeSet(spec.primes), spec.count, start=2)
    else:
        return read_sequence_file(spec.path, spec.count, origin)
    prefix = validate_increasing(terms, origin)
    return prefix
