"""Discrete valuations on the supported fields, with residue arithmetic.

The ``padic:p`` valuation counts the exact power of p in a reduced
fraction; the ``tadic`` valuation counts the order of vanishing at
t = 0.  Both are surjective onto Z on nonzero elements and send 0 to
infinity.  The ring of the valuation is R = {v >= 0}, its maximal ideal
m = {v >= 1}, and the residue field R/m is F_p (padic:p, tadic:p) or Q
(tadic:0, by evaluation at t = 0).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import sampling
from .elements import (
    PADIC,
    DomainError,
    FieldElement,
    FieldSpec,
    format_element,
    pi_power,
    poly_t_order,
)
from .reports import AxiomResult, CheckReport


@dataclass(frozen=True, eq=False)
class ExtInt:
    """An integer extended with +infinity, the valuation of zero.

    Infinity is a distinct tagged value (``value is None``), never a
    sentinel integer; it absorbs addition and dominates every ordering.
    Comparisons and addition also accept plain ints.
    """

    value: int | None

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    @property
    def finite(self) -> int:
        if self.value is None:
            raise DomainError("infinite valuation where an integer is required")
        return self.value

    @staticmethod
    def _coerce(other) -> "ExtInt | None":
        if isinstance(other, ExtInt):
            return other
        if isinstance(other, int):
            return ExtInt(other)
        return None

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.value == o.value

    def __hash__(self) -> int:
        return hash(self.value)

    def __lt__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.value is None:
            return False
        if o.value is None:
            return True
        return self.value < o.value

    def __le__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self == o or self < o

    def __gt__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o < self

    def __ge__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o <= self

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.value is None or o.value is None:
            return INFINITY
        return ExtInt(self.value + o.value)

    __radd__ = __add__

    def __mul__(self, n):
        if not isinstance(n, int) or n <= 0:
            return NotImplemented
        if self.value is None:
            return INFINITY
        return ExtInt(self.value * n)

    __rmul__ = __mul__

    def __str__(self) -> str:
        return "inf" if self.value is None else str(self.value)

    def __repr__(self) -> str:
        return f"ExtInt({self.value})"


INFINITY = ExtInt(None)


@dataclass(frozen=True)
class ResidueElem:
    """Element of the residue field: an integer mod p, or an exact rational.

    ``char`` is p for F_p and 0 for Q; values are canonical (representative
    in [0, p), or a reduced Fraction), so equality is structural.
    """

    char: int
    value: object

    def __post_init__(self) -> None:
        if self.char:
            object.__setattr__(self, "value", int(self.value) % self.char)
        else:
            v = self.value
            object.__setattr__(self, "value", v if isinstance(v, Fraction) else Fraction(v))

    @property
    def is_zero(self) -> bool:
        return not self.value

    def __bool__(self) -> bool:
        return not self.is_zero

    def _check(self, other: "ResidueElem") -> None:
        if other.char != self.char:
            raise DomainError("mixed residue fields")

    def __add__(self, other):
        if not isinstance(other, ResidueElem):
            return NotImplemented
        self._check(other)
        return ResidueElem(self.char, self.value + other.value)

    def __sub__(self, other):
        if not isinstance(other, ResidueElem):
            return NotImplemented
        self._check(other)
        return ResidueElem(self.char, self.value - other.value)

    def __mul__(self, other):
        if not isinstance(other, ResidueElem):
            return NotImplemented
        self._check(other)
        return ResidueElem(self.char, self.value * other.value)

    def __neg__(self):
        return ResidueElem(self.char, -self.value)

    def inverse(self) -> "ResidueElem":
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero residue")
        if self.char:
            return ResidueElem(self.char, pow(self.value, -1, self.char))
        return ResidueElem(0, Fraction(1) / self.value)

    def __truediv__(self, other):
        if not isinstance(other, ResidueElem):
            return NotImplemented
        return self * other.inverse()

    def __str__(self) -> str:
        return str(self.value)


def _int_ord(n: int, p: int) -> int:
    # exact power of p dividing n; n != 0
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


@dataclass(frozen=True)
class ValuationSpec:
    """A concrete discretely valued field: field spec, uniformizer, residue field."""

    field: FieldSpec

    @classmethod
    def from_string(cls, text: str) -> "ValuationSpec":
        return cls(FieldSpec.from_string(text))

    @property
    def uniformizer(self) -> FieldElement:
        if self.field.kind == PADIC:
            return FieldElement.from_int(self.field, self.field.param)
        return FieldElement.indeterminate(self.field)

    @property
    def residue_char(self) -> int:
        return self.field.param

    @property
    def residue_field_name(self) -> str:
        return "Q" if self.residue_char == 0 else f"F_{self.residue_char}"

    def residue_zero(self) -> ResidueElem:
        return ResidueElem(self.residue_char, 0)

    def residue_one(self) -> ResidueElem:
        return ResidueElem(self.residue_char, 1)

    def valuation(self, x: FieldElement) -> ExtInt:
        """v(x), with v(0) = infinity; exact order of the uniformizer in x."""
        if x.spec != self.field:
            raise DomainError("element does not belong to this field")
        if x.is_zero:
            return INFINITY
        if self.field.kind == PADIC:
            p = self.field.param
            return ExtInt(_int_ord(x.num, p) - _int_ord(x.den, p))
        return ExtInt(poly_t_order(x.num) - poly_t_order(x.den))

    def uniformizer_power(self, n: int) -> FieldElement:
        return pi_power(self.field, n)

    def residue(self, x: FieldElement) -> ResidueElem:
        """The image of x in R/m; requires v(x) >= 0, kernel is {v >= 1}."""
        v = self.valuation(x)
        if not v.is_infinite and v.finite < 0:
            raise DomainError(f"residue of {format_element(x)} with negative valuation {v}")
        if x.is_zero:
            return self.residue_zero()
        if self.field.kind == PADIC:
            p = self.field.param
            return ResidueElem(p, x.num * pow(x.den % p, -1, p))
        # reduced form with v(x) >= 0 forces den(0) != 0
        num0 = x.num[0] if x.num else 0
        den0 = x.den[0]
        p = self.field.param
        if p:
            return ResidueElem(p, num0 * pow(den0, -1, p))
        return ResidueElem(0, Fraction(num0) / den0)


def valuation(spec: ValuationSpec, x: FieldElement) -> ExtInt:
    return spec.valuation(x)


def uniformizer_power(spec: ValuationSpec, n: int) -> FieldElement:
    return spec.uniformizer_power(n)


def residue(spec: ValuationSpec, x: FieldElement) -> ResidueElem:
    return spec.residue(x)


def check_valuation_axioms(spec: ValuationSpec, seed: int, samples: int) -> CheckReport:
    """Sampled verification of the valuation axioms.

    Checks v(ab) = v(a) + v(b) exactly, the ultrametric inequality
    v(a+b) >= min(v(a), v(b)), and its sharp case (equality whenever
    v(a) != v(b)).  Every eighth pair is (a, -a) so the v(0) = infinity
    branch of the inequality is exercised.  Violations are reported, not
    thrown.
    """
    if samples < 1:
        raise DomainError("samples must be >= 1")
    rng = random.Random(seed)
    mul_pass = ultra_pass = sharp_pass = sharp_total = 0
    mul_ce = ultra_ce = sharp_ce = None
    for i in range(samples):
        a = sampling.random_nonzero_element(spec.field, rng)
        b = -a if i % 8 == 5 else sampling.random_nonzero_element(spec.field, rng)
        va = spec.valuation(a)
        vb = spec.valuation(b)
        if spec.valuation(a * b) == va + vb:
            mul_pass += 1
        elif mul_ce is None:
            mul_ce = f"{format_element(a)},{format_element(b)}"
        lo = min(va, vb)
        vs = spec.valuation(a + b)
        if vs >= lo:
            ultra_pass += 1
        elif ultra_ce is None:
            ultra_ce = f"{format_element(a)},{format_element(b)}"
        if va != vb:
            sharp_total += 1
            if vs == lo:
                sharp_pass += 1
            elif sharp_ce is None:
                sharp_ce = f"{format_element(a)},{format_element(b)}"
    return CheckReport(
        (
            AxiomResult("mul", mul_pass, samples, mul_ce),
            AxiomResult("ultrametric", ultra_pass, samples, ultra_ce),
            AxiomResult("ultrametric-sharp", sharp_pass, sharp_total, sharp_ce),
        )
    )
