"""The semigroup-filtration function on the valuation ring and its ideal
spectrum.

The filtration function is the valuation restricted to R, taking values
in Z adjoined infinity (f(1) = 0, f(0) = infinity); it satisfies both
filtration axioms with equality.  Attached to it are the power-membership
sets

    upper(g) = {x : some n > 0 has g <= f(x^n)}
    lower(g) = {x : some n > 0 has g  = f(x^n)}

implemented literally.  Since f(x^n) = n * f(x) here, membership has a
closed form: upper(g) is the maximal ideal for every finite g >= 1, and
lower(g) is {x : f(x) >= 1 and f(x) divides g} for g >= 1, the unit group
for g = 0.  The enumeration over n in [1, g] is retained as an
independent cross-check route.

Several clauses the literature states for these sets fail under the
literal reading; the report operations evaluate each clause and mark the
failures FAIL-LITERAL with a witness rather than silently repairing the
definitions.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum

from . import sampling
from .elements import DomainError, FieldElement, format_element
from .reports import FAIL_LITERAL, PASS, ClauseStatus, StatusReport
from .valuation import ExtInt, ValuationSpec


class SpecPrime(Enum):
    """The two primes of a discrete valuation ring."""

    ZERO_IDEAL = "0"
    MAXIMAL_IDEAL = "m"

    @classmethod
    def from_string(cls, text: str) -> "SpecPrime":
        for prime in cls:
            if text == prime.value:
                return prime
        raise DomainError(f"unknown prime {text!r}; expected '0' or 'm'")


@dataclass(frozen=True)
class FiltFn:
    """The valuation-induced filtration function on R, valued in Z + infinity."""

    spec: ValuationSpec

    def value(self, x: FieldElement) -> ExtInt:
        v = self.spec.valuation(x)
        if not v.is_infinite and v.finite < 0:
            raise DomainError(f"{format_element(x)} lies outside the ring")
        return v


def f_value(ff: FiltFn, x: FieldElement) -> ExtInt:
    return ff.value(x)


def upper_member(ff: FiltFn, x: FieldElement, g: int) -> bool:
    """Membership of x in upper(g) for finite g >= 1, by closed form.

    Since f(x^n) = n * f(x), the set equals the maximal ideal: x = 0 or
    f(x) >= 1.
    """
    if g < 1:
        raise DomainError("upper membership needs g >= 1")
    fx = ff.value(x)
    return fx >= 1


def lower_member(ff: FiltFn, x: FieldElement, g: int) -> bool:
    """Membership of x in lower(g) for g >= 0, by closed form.

    g = 0 admits exactly the elements with f(x) = 0; finite g >= 1 admits
    exactly the x with 1 <= f(x) and f(x) dividing g; 0 is never a member.
    """
    if g < 0:
        raise DomainError("lower membership needs g >= 0")
    fx = ff.value(x)
    if fx.is_infinite:
        return False
    if g == 0:
        return fx.finite == 0
    return fx.finite >= 1 and g % fx.finite == 0


def upper_member_literal(ff: FiltFn, x: FieldElement, g: int) -> bool:
    """Literal existential over n in [1, g]; the bound suffices since f(x) >= 1
    implies g * f(x) >= g."""
    if g < 1:
        raise DomainError("upper membership needs g >= 1")
    ff.value(x)
    power = x
    for _ in range(1, g + 1):
        if ff.value(power) >= g:
            return True
        power = power * x
    return False


def lower_member_literal(ff: FiltFn, x: FieldElement, g: int) -> bool:
    """Literal existential over n in [1, max(g, 1)]."""
    if g < 0:
        raise DomainError("lower membership needs g >= 0")
    ff.value(x)
    power = x
    for _ in range(1, max(g, 1) + 1):
        if ff.value(power) == g:
            return True
        power = power * x
    return False


def in_radical_of_positive_part(ff: FiltFn, x: FieldElement) -> bool:
    """Membership in the radical of {f > 0}, which is the maximal ideal."""
    return ff.value(x) >= 1


def _stratified_ring_samples(ff: FiltFn, rng: random.Random, samples: int) -> list:
    field = ff.spec.field
    pi = ff.spec.uniformizer
    xs = [pi, pi * pi, FieldElement.one(field), FieldElement.zero(field)]
    for _ in range(samples):
        xs.append(sampling.random_ring_element(field, rng))
    return xs


def lemma32_report(ff: FiltFn, seed: int, samples: int) -> StatusReport:
    """Evaluate the classical clauses about upper/lower sets literally.

    Clauses (ii), (iii) and the upper half of (iv) hold and are verified
    on stratified samples; clause (i) and the lower half of (iv) fail for
    the literal sets, and the report carries a witness for each failure.
    """
    if samples < 1:
        raise DomainError("samples must be >= 1")
    rng = random.Random(seed)
    xs = _stratified_ring_samples(ff, rng, samples)
    pi = ff.spec.uniformizer

    # (i) lower(0) versus the radical of the positive part: the literal
    # lower(0) is the unit group while the radical is the maximal ideal.
    i_witness = None
    for x in xs:
        if lower_member(ff, x, 0) != in_radical_of_positive_part(ff, x):
            i_witness = format_element(x)
            break
    clause_i = ClauseStatus(
        "i", PASS if i_witness is None else FAIL_LITERAL, i_witness
    )

    # (ii) upper(infinity) = 0: in a domain no nonzero power reaches
    # infinite value.
    ii_witness = None
    for x in xs:
        if x.is_zero:
            continue
        power = x
        for _ in range(4):
            if ff.value(power).is_infinite:
                ii_witness = format_element(x)
                break
            power = power * x
        if ii_witness is not None:
            break
    clause_ii = ClauseStatus(
        "ii", PASS if ii_witness is None else FAIL_LITERAL, ii_witness
    )

    # (iii) lower(g) inside upper(g) for g >= 1.
    iii_witness = None
    for x in xs:
        for g in range(1, 11):
            if lower_member(ff, x, g) and not upper_member(ff, x, g):
                iii_witness = format_element(x)
                break
        if iii_witness is not None:
            break
    clause_iii = ClauseStatus(
        "iii", PASS if iii_witness is None else FAIL_LITERAL, iii_witness
    )

    # (iv) upper half: g <= h implies upper(h) inside upper(g).
    iv_upper_witness = None
    for x in xs:
        for g in range(1, 11):
            for h in range(g, 11):
                if upper_member(ff, x, h) and not upper_member(ff, x, g):
                    iv_upper_witness = format_element(x)
                    break
            if iv_upper_witness is not None:
                break
        if iv_upper_witness is not None:
            break
    clause_iv_upper = ClauseStatus(
        "iv-upper", PASS if iv_upper_witness is None else FAIL_LITERAL, iv_upper_witness
    )

    # (iv) lower half: g <= h implies lower(h) inside lower(g); fails
    # whenever f(x) = h does not divide g (canonically x = pi^2, h = 2,
    # g = 1).
    iv_lower_witness = None
    for x in [pi * pi] + xs:
        for g in range(0, 11):
            for h in range(g, 11):
                if lower_member(ff, x, h) and not lower_member(ff, x, g):
                    iv_lower_witness = format_element(x)
                    break
            if iv_lower_witness is not None:
                break
        if iv_lower_witness is not None:
            break
    clause_iv_lower = ClauseStatus(
        "iv-lower", PASS if iv_lower_witness is None else FAIL_LITERAL, iv_lower_witness
    )

    return StatusReport(
        (clause_i, clause_ii, clause_iii, clause_iv_upper, clause_iv_lower)
    )


def spec_f(ff: FiltFn) -> list:
    """The prime spectrum of a discrete valuation ring: (0) and m."""
    return [SpecPrime.ZERO_IDEAL, SpecPrime.MAXIMAL_IDEAL]


def branched(ff: FiltFn, prime: SpecPrime) -> bool:
    """Branched-prime criterion: P is branched iff P = upper(g) for a finite g >= 1.

    Every upper(g) equals the maximal ideal, so m is branched (g = 1) and
    the zero ideal is not.
    """
    return prime is SpecPrime.MAXIMAL_IDEAL


def prop36_check(ff: FiltFn, x: FieldElement, seed: int, samples: int = 100) -> StatusReport:
    """Check the two-prime statements attached to a fixed x with f(x) > 0.

    First half: upper(f(x)) is the maximal ideal, the smallest (and only)
    prime containing x; verified by sampled membership agreement.  Second
    half: the literal lower(f(x)) is compared with the zero ideal, the
    largest prime avoiding x, and fails literally with witness pi.
    """
    if x.is_zero:
        raise DomainError("x must be nonzero with finite positive value")
    fx = ff.value(x)
    if fx == 0:
        raise DomainError("x must have positive value")
    g = fx.finite
    rng = random.Random(seed)
    xs = _stratified_ring_samples(ff, rng, samples)

    first_witness = None
    if not upper_member(ff, x, g):
        first_witness = format_element(x)
    else:
        for y in xs:
            if upper_member(ff, y, g) != (ff.value(y) >= 1):
                first_witness = format_element(y)
                break
    first = ClauseStatus(
        "first-half", PASS if first_witness is None else FAIL_LITERAL, first_witness
    )

    second_witness = None
    for y in [ff.spec.uniformizer] + xs:
        if lower_member(ff, y, g) != y.is_zero:
            second_witness = format_element(y)
            break
    second = ClauseStatus(
        "second-half", PASS if second_witness is None else FAIL_LITERAL, second_witness
    )
    return StatusReport((first, second))
