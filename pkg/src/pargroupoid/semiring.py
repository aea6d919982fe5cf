"""Scalar systems: cancellative semirings, semifields, and rings of differences.

A scalar system is described by a SemiringSpec: a carrier (possibly infinite),
the two operations, the constants, equality, and declared properties. The law
checker measures the usual semiring laws plus additive cancellation and the
semifield property, and reports claim/measurement mismatches instead of
trusting the declarations.

The ring of differences of an additively cancellative semiring S is built from
unreduced pairs (pos, neg) standing for pos - neg; two pairs are equal when the
cross sums agree. delta_of(S) packages that ring as another SemiringSpec, so
every structure that is generic over a SemiringSpec works over S^D unchanged.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache
from random import Random
from typing import Any, Callable

DEFAULT_SEED = 0xC0FFEE

# Carriers at most this large are checked exhaustively instead of sampled.
EXHAUSTIVE_CARRIER_LIMIT = 64

LAW_NAMES = (
    "add_associative",
    "add_commutative",
    "add_identity",
    "mul_associative",
    "mul_identity",
    "left_distributive",
    "right_distributive",
    "zero_annihilates",
    "additively_cancellative",
    "semifield",
)


class SemiringPropertyError(ValueError):
    """An operation needs a property the scalar system does not provide."""


class ScalarMismatchError(ValueError):
    """Two values belong to different scalar systems."""


@dataclass(frozen=True)
class SemiringSpec:
    """A scalar system: carrier plus operations and declared properties.

    Carrier values are ordinary Python objects; all structure lives in the
    callables. A finite carrier is listed in `carrier`; infinite carriers
    instead provide `sample_prefix` (deterministic leading test values) and
    `sample` (a seeded pseudo-random draw). `try_sub` returns a - b when that
    difference exists inside the carrier and None otherwise; `neg` exists only
    on rings of differences, whose base system is kept in `base`.
    """

    name: str
    add: Callable[[Any, Any], Any] = field(repr=False)
    mul: Callable[[Any, Any], Any] = field(repr=False)
    zero: Any = field(repr=False)
    one: Any = field(repr=False)
    eq: Callable[[Any, Any], bool] = field(repr=False)
    claims_additively_cancellative: bool = False
    claims_semifield: bool = False
    mul_inverse: Callable[[Any], Any] | None = field(default=None, repr=False)
    carrier: tuple[Any, ...] | None = field(default=None, repr=False)
    sample_prefix: tuple[Any, ...] = field(default=(), repr=False)
    sample: Callable[[Random], Any] | None = field(default=None, repr=False)
    try_sub: Callable[[Any, Any], Any] | None = field(default=None, repr=False)
    neg: Callable[[Any], Any] | None = field(default=None, repr=False)
    fmt: Callable[[Any], str] = field(default=str, repr=False)
    parse: Callable[[str], Any] | None = field(default=None, repr=False)
    base: "SemiringSpec | None" = field(default=None, repr=False)

    def is_zero(self, x) -> bool:
        return self.eq(x, self.zero)

    @property
    def is_delta(self) -> bool:
        return self.base is not None

    def values(self, count: int, seed: int = DEFAULT_SEED) -> list:
        """Deterministic stream of carrier values for checks and sampling."""
        if self.carrier is not None:
            return list(self.carrier)
        out = list(self.sample_prefix)[:count]
        if self.sample is None:
            return out
        rng = Random(seed)
        while len(out) < count:
            out.append(self.sample(rng))
        return out


@dataclass(frozen=True)
class LawCheck:
    law: str
    passed: bool
    witness: tuple | None = None


@dataclass(frozen=True)
class LawReport:
    """Measured laws for one scalar system, plus claim consistency."""

    semiring: str
    mode: str  # "exhaustive" | "sampled"
    laws: tuple[LawCheck, ...]
    claim_issues: tuple[str, ...]

    @property
    def all_laws_pass(self) -> bool:
        return all(c.passed for c in self.laws)

    @property
    def claims_consistent(self) -> bool:
        return not self.claim_issues

    def law(self, name: str) -> LawCheck:
        for c in self.laws:
            if c.law == name:
                return c
        raise KeyError(f"no law named {name!r}")


def check_semiring_laws(S: SemiringSpec, sample_budget: int = 1000,
                        seed: int = DEFAULT_SEED) -> LawReport:
    """Measure the semiring laws of S on an exhaustive or sampled triple set.

    Finite carriers of at most EXHAUSTIVE_CARRIER_LIMIT elements are checked
    exhaustively; otherwise `sample_budget` deterministic triples are drawn
    (a fixed prefix of canonical values followed by a seeded stream). Every
    law is measured regardless of what S claims; mismatches between claims
    and measurements are listed in the report.
    """
    if sample_budget < 1:
        raise ValueError(f"sample_budget must be positive, got {sample_budget}")
    exhaustive = S.carrier is not None and len(S.carrier) <= EXHAUSTIVE_CARRIER_LIMIT
    if exhaustive:
        singles = list(S.carrier)
        triples = list(itertools.product(singles, repeat=3))
    else:
        stream = S.values(3 * sample_budget, seed)
        singles = S.values(sample_budget, seed)
        triples = [tuple(stream[3 * i:3 * i + 3]) for i in range(len(stream) // 3)]

    add, mul, eq = S.add, S.mul, S.eq

    def first_triple(pred) -> tuple | None:
        for t in triples:
            if not pred(*t):
                return t
        return None

    checks: list[LawCheck] = []

    def record(law: str, witness: tuple | None) -> None:
        checks.append(LawCheck(law, witness is None, witness))

    record("add_associative",
           first_triple(lambda a, b, c: eq(add(add(a, b), c), add(a, add(b, c)))))
    record("add_commutative",
           first_triple(lambda a, b, c: eq(add(a, b), add(b, a))))
    record("add_identity",
           next(((a,) for a in singles if not eq(add(a, S.zero), a)), None))
    record("mul_associative",
           first_triple(lambda a, b, c: eq(mul(mul(a, b), c), mul(a, mul(b, c)))))
    record("mul_identity",
           next(((a,) for a in singles
                 if not (eq(mul(a, S.one), a) and eq(mul(S.one, a), a))), None))
    record("left_distributive",
           first_triple(lambda a, b, c: eq(mul(a, add(b, c)), add(mul(a, b), mul(a, c)))))
    record("right_distributive",
           first_triple(lambda a, b, c: eq(mul(add(a, b), c), add(mul(a, c), mul(b, c)))))
    record("zero_annihilates",
           next(((a,) for a in singles
                 if not (S.is_zero(mul(a, S.zero)) and S.is_zero(mul(S.zero, a)))), None))

    # Additive cancellation: a + c = b + c must force a = b. The exhaustive
    # sweep iterates c outermost and a innermost so the first witness found is
    # canonical for a fixed carrier order.
    witness = None
    if exhaustive:
        for c_, b_, a_ in itertools.product(singles, repeat=3):
            if eq(add(a_, c_), add(b_, c_)) and not eq(a_, b_):
                witness = (a_, b_, c_)
                break
    else:
        for a_, b_, c_ in triples:
            if eq(add(a_, c_), add(b_, c_)) and not eq(a_, b_):
                witness = (a_, b_, c_)
                break
    record("additively_cancellative", witness)

    def semifield_witness() -> tuple | None:
        for a in singles:
            if S.is_zero(a):
                continue
            if S.mul_inverse is not None:
                inv = S.mul_inverse(a)
            elif S.carrier is not None:
                inv = next((b for b in S.carrier
                            if eq(mul(a, b), S.one) and eq(mul(b, a), S.one)), None)
            else:
                inv = None
            if inv is None or not eq(mul(a, inv), S.one) or not eq(mul(inv, a), S.one):
                return (a,)
        return None

    record("semifield", semifield_witness())

    measured = {c.law: c.passed for c in checks}
    issues: list[str] = []
    if S.claims_additively_cancellative and not measured["additively_cancellative"]:
        issues.append("claims additive cancellation but a counterexample was found")
    if S.claims_semifield and not measured["semifield"]:
        issues.append("claims to be a semifield but a counterexample was found")

    return LawReport(semiring=S.name,
                     mode="exhaustive" if exhaustive else "sampled",
                     laws=tuple(checks),
                     claim_issues=tuple(issues))


# ---------------------------------------------------------------------------
# Concrete scalar systems.

def _nonneg_fraction(s: str) -> Fraction:
    v = Fraction(s)
    if v < 0:
        raise ValueError(f"not a non-negative rational: {s!r}")
    return v


def _nonneg_int(s: str) -> int:
    v = int(s)
    if v < 0:
        raise ValueError(f"not a natural number: {s!r}")
    return v


#: Non-negative rationals, exact. A semifield.
QNN = SemiringSpec(
    name="qnn",
    add=lambda a, b: a + b,
    mul=lambda a, b: a * b,
    zero=Fraction(0),
    one=Fraction(1),
    eq=lambda a, b: a == b,
    claims_additively_cancellative=True,
    claims_semifield=True,
    mul_inverse=lambda a: None if a == 0 else Fraction(1) / Fraction(a),
    sample_prefix=(Fraction(0), Fraction(1), Fraction(1, 2), Fraction(2),
                   Fraction(2, 3), Fraction(5, 2)),
    sample=lambda rng: Fraction(rng.randrange(0, 240), rng.randrange(1, 24)),
    try_sub=lambda a, b: a - b if a >= b else None,
    parse=_nonneg_fraction,
)

#: Natural numbers. Cancellative but not a semifield (2 has no inverse).
NAT = SemiringSpec(
    name="nat",
    add=lambda a, b: a + b,
    mul=lambda a, b: a * b,
    zero=0,
    one=1,
    eq=lambda a, b: a == b,
    claims_additively_cancellative=True,
    claims_semifield=False,
    mul_inverse=lambda a: 1 if a == 1 else None,
    sample_prefix=(0, 1, 2, 3, 5, 8),
    sample=lambda rng: rng.randrange(0, 1000),
    try_sub=lambda a, b: a - b if a >= b else None,
    parse=_nonneg_int,
)

#: Booleans with 1 + 1 = 1. The stock non-cancellative example: 1 + 1 = 0 + 1.
BOOL = SemiringSpec(
    name="bool",
    add=lambda a, b: 1 if (a or b) else 0,
    mul=lambda a, b: 1 if (a and b) else 0,
    zero=0,
    one=1,
    eq=lambda a, b: a == b,
    claims_additively_cancellative=False,
    claims_semifield=True,
    carrier=(0, 1),
)


# ---------------------------------------------------------------------------
# Rings of differences.

@dataclass(frozen=True)
class DeltaElement:
    """Formal difference pos - neg of two carrier values, kept unreduced.

    Structural equality of the pairs is finer than equality in the ring of
    differences; semantic equality goes through delta_eq / the spec's eq.
    """

    pos: Any
    neg: Any


def delta_embed(S: SemiringSpec, a) -> DeltaElement:
    """Embed a carrier value of S into the ring of differences of S."""
    if not S.claims_additively_cancellative:
        raise SemiringPropertyError(
            f"{S.name} does not declare additive cancellation; "
            "its ring of differences would collapse")
    return DeltaElement(a, S.zero)


def delta_add(S: SemiringSpec, x: DeltaElement, y: DeltaElement) -> DeltaElement:
    return DeltaElement(S.add(x.pos, y.pos), S.add(x.neg, y.neg))


def delta_mul(S: SemiringSpec, x: DeltaElement, y: DeltaElement) -> DeltaElement:
    return DeltaElement(
        S.add(S.mul(x.pos, y.pos), S.mul(x.neg, y.neg)),
        S.add(S.mul(x.pos, y.neg), S.mul(x.neg, y.pos)))


def delta_neg(S: SemiringSpec, x: DeltaElement) -> DeltaElement:
    return DeltaElement(x.neg, x.pos)


def delta_eq(S: SemiringSpec, x: DeltaElement, y: DeltaElement) -> bool:
    """(a,b) = (c,d) exactly when a + d = b + c in S."""
    return S.eq(S.add(x.pos, y.neg), S.add(x.neg, y.pos))


def delta_canonical(S: SemiringSpec, x: DeltaElement):
    """The value v of S with x = (v, 0), or None when x lies outside S.

    Needs S.try_sub; this is the membership test used when results computed in
    the ring of differences are pulled back into S.
    """
    if S.try_sub is None:
        raise SemiringPropertyError(f"{S.name} has no try_sub; cannot test membership")
    return S.try_sub(x.pos, x.neg)


def _delta_fmt(S: SemiringSpec) -> Callable[[DeltaElement], str]:
    def fmt(d: DeltaElement) -> str:
        if S.try_sub is not None:
            v = S.try_sub(d.pos, d.neg)
            if v is not None:
                return S.fmt(v)
            w = S.try_sub(d.neg, d.pos)
            if w is not None:
                return f"-{S.fmt(w)}"
        return f"({S.fmt(d.pos)}|{S.fmt(d.neg)})"
    return fmt


def _delta_parse(S: SemiringSpec) -> Callable[[str], DeltaElement]:
    def parse(s: str) -> DeltaElement:
        if S.parse is None:
            raise SemiringPropertyError(f"{S.name} has no parser")
        if "|" in s:
            p, n = s.split("|", 1)
            return DeltaElement(S.parse(p.lstrip("(")), S.parse(n.rstrip(")")))
        if s.startswith("-"):
            return DeltaElement(S.zero, S.parse(s[1:]))
        return DeltaElement(S.parse(s), S.zero)
    return parse


def _delta_mul_inverse(S: SemiringSpec):
    if S.mul_inverse is None or S.try_sub is None:
        return None

    def inverse(d: DeltaElement) -> DeltaElement | None:
        v = S.try_sub(d.pos, d.neg)
        if v is not None:
            if S.is_zero(v):
                return None
            inv = S.mul_inverse(v)
            return None if inv is None else DeltaElement(inv, S.zero)
        w = S.try_sub(d.neg, d.pos)
        if w is None or S.is_zero(w):
            return None
        inv = S.mul_inverse(w)
        return None if inv is None else DeltaElement(S.zero, inv)

    return inverse


@cache
def delta_of(S: SemiringSpec) -> SemiringSpec:
    """The ring of differences of S, packaged as a SemiringSpec.

    Values are DeltaElement pairs over S, stored unreduced; equality is the
    cross-sum comparison. Requires S to declare additive cancellation.
    """
    if not S.claims_additively_cancellative:
        raise SemiringPropertyError(
            f"{S.name} does not declare additive cancellation; "
            "its ring of differences would collapse")
    zero = DeltaElement(S.zero, S.zero)
    one = DeltaElement(S.one, S.zero)
    prefix = (zero, one, DeltaElement(S.zero, S.one)) + tuple(
        DeltaElement(v, S.zero) for v in S.sample_prefix if not S.is_zero(v))
    sample = None
    if S.sample is not None:
        base_sample = S.sample
        sample = lambda rng: DeltaElement(base_sample(rng), base_sample(rng))
    return SemiringSpec(
        name=f"{S.name}-delta",
        add=lambda x, y: delta_add(S, x, y),
        mul=lambda x, y: delta_mul(S, x, y),
        zero=zero,
        one=one,
        eq=lambda x, y: delta_eq(S, x, y),
        claims_additively_cancellative=True,
        claims_semifield=S.claims_semifield,
        mul_inverse=_delta_mul_inverse(S),
        sample_prefix=prefix,
        sample=sample,
        try_sub=lambda x, y: delta_add(S, x, delta_neg(S, y)),
        neg=lambda x: delta_neg(S, x),
        fmt=_delta_fmt(S),
        parse=_delta_parse(S),
        base=S,
    )
