"""
Exact motivic scalars.

A MotivicScalar is a rational function in v = L^(1/2) with rational coefficients, stored as a
reduced sympy fraction-field element. It covers L^(±1/2) and every (1 - L^n)^(-1), which is all
the closed forms and dimensional-reduction prefactors ever need.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from sympy import QQ, isprime
from sympy.polys.fields import FracElement, field

import config
from motive.errors import (
    MotiveDivisionByZero,
    NotPrime,
    OddHalfPower,
    PoleAtMinusOne,
    PoleAtPrime,
)

logger = logging.getLogger(__name__)

FIELD, _V = field("v", QQ)
RING = FIELD.ring

Number = Union[int, Fraction]


class LambdaConvention(Enum):
    """Which half-Lefschetz class is a line element for the sigma operations."""

    HALF_LEFSCHETZ = "half_lefschetz"                    # psi_k(v) = v^k
    NEGATIVE_HALF_LEFSCHETZ = "negative_half_lefschetz"  # psi_k(v) = (-1)^(k+1) v^k

    def adams_sign(self, k: int) -> int:
        if self is LambdaConvention.NEGATIVE_HALF_LEFSCHETZ and k % 2 == 0:
            return -1
        return 1


_default_convention = LambdaConvention(getattr(config, "LAMBDA_CONVENTION", "half_lefschetz"))


def default_convention() -> LambdaConvention:
    return _default_convention


def set_default_convention(convention: LambdaConvention) -> None:
    global _default_convention
    if convention is not _default_convention:
        logger.info(f"λ-convention set to {convention.value}")
    _default_convention = convention


def _qq(value: Number):
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    return QQ(int(value))


def _to_fraction(coeff) -> Fraction:
    return Fraction(int(coeff.numerator), int(coeff.denominator))


def _poly(terms: Dict[int, Number]):
    return RING.from_dict({(exp,): _qq(c) for exp, c in terms.items()})


def _poly_terms(poly) -> List[Tuple[int, Fraction]]:
    """Exponent/coefficient pairs of a univariate polynomial, highest exponent first."""
    return sorted(((monom[0], _to_fraction(c)) for monom, c in poly.items()), reverse=True)


@dataclass(frozen=True, slots=True)
class MotivicScalar:
    """An element of QQ(L^(1/2)). Immutable; all arithmetic returns reduced values."""

    frac: FracElement

    # -- construction ---------------------------------------------------------------

    @classmethod
    def of(cls, value: Union["MotivicScalar", Number]) -> "MotivicScalar":
        if isinstance(value, MotivicScalar):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(FIELD.new(_poly({0: value})))
        raise TypeError(f"Cannot build a MotivicScalar from {value!r}")

    @classmethod
    def from_terms(cls, numerator: Dict[int, Number], denominator: Optional[Dict[int, Number]] = None) -> "MotivicScalar":
        """Build from exponent→coefficient maps in v; the denominator defaults to 1."""
        denom = _poly(denominator) if denominator is not None else RING.one
        if not denom:
            raise MotiveDivisionByZero("Denominator is the zero polynomial")
        return cls(FIELD.new(_poly(numerator), denom))

    @classmethod
    def half_power(cls, exponent: int) -> "MotivicScalar":
        """L^(exponent/2), i.e. v**exponent for any integer exponent."""
        if exponent >= 0:
            return cls.from_terms({exponent: 1})
        return cls.from_terms({0: 1}, {-exponent: 1})

    # -- views ----------------------------------------------------------------------

    @property
    def numerator(self):
        """Numerator, scaled so that the denominator is monic."""
        return self.frac.numer.quo_ground(self.frac.denom.LC)

    @property
    def denominator(self):
        """Monic denominator."""
        return self.frac.denom.quo_ground(self.frac.denom.LC)

    def numerator_terms(self) -> List[Tuple[int, Fraction]]:
        return _poly_terms(self.numerator)

    def denominator_terms(self) -> List[Tuple[int, Fraction]]:
        return _poly_terms(self.denominator)

    @property
    def is_zero(self) -> bool:
        return not self.frac.numer

    def __bool__(self) -> bool:
        return not self.is_zero

    @property
    def is_even(self) -> bool:
        """True when the reduced value only involves integer powers of L."""
        return all(exp % 2 == 0 for exp, _ in self.numerator_terms() + self.denominator_terms())

    # -- arithmetic -----------------------------------------------------------------

    @staticmethod
    def _coerce(other) -> Optional[FracElement]:
        if isinstance(other, MotivicScalar):
            return other.frac
        if isinstance(other, (int, Fraction)):
            return MotivicScalar.of(other).frac
        return None

    def __add__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return MotivicScalar(self.frac + rhs)

    __radd__ = __add__

    def __sub__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return MotivicScalar(self.frac - rhs)

    def __rsub__(self, other):
        lhs = self._coerce(other)
        if lhs is None:
            return NotImplemented
        return MotivicScalar(lhs - self.frac)

    def __mul__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return MotivicScalar(self.frac * rhs)

    __rmul__ = __mul__

    def __truediv__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        if not rhs:
            raise MotiveDivisionByZero(f"Division of {self} by zero")
        return MotivicScalar(self.frac / rhs)

    def __rtruediv__(self, other):
        lhs = self._coerce(other)
        if lhs is None:
            return NotImplemented
        if self.is_zero:
            raise MotiveDivisionByZero(f"Division of {other} by zero")
        return MotivicScalar(lhs / self.frac)

    def __neg__(self):
        return MotivicScalar(-self.frac)

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent >= 0:
            return MotivicScalar(FIELD.new(self.frac.numer ** exponent, self.frac.denom ** exponent))
        if self.is_zero:
            raise MotiveDivisionByZero("Negative power of zero")
        return MotivicScalar(FIELD.new(self.frac.denom ** -exponent, self.frac.numer ** -exponent))

    # -- rendering ------------------------------------------------------------------

    def render(self) -> str:
        """Canonical text with `L` and `L^(k/2)`, e.g. `(2*L - 1)/(L - 1)`."""
        num_terms = self.numerator_terms()
        den_terms = self.denominator_terms()
        if not num_terms:
            return "0"
        numerator = _render_poly(num_terms)
        if den_terms == [(0, Fraction(1))]:
            return numerator
        if len(num_terms) > 1:
            numerator = f"({numerator})"
        denominator = _render_poly(den_terms)
        if len(den_terms) > 1:
            denominator = f"({denominator})"
        return f"{numerator}/{denominator}"

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"MotivicScalar({self.render()!r})"


def _render_power(exp: int) -> str:
    if exp == 0:
        return ""
    if exp % 2:
        return f"L^({exp}/2)"
    if exp == 2:
        return "L"
    return f"L^{exp // 2}"


def _render_coefficient(coeff: Fraction) -> str:
    if coeff.denominator == 1:
        return str(coeff.numerator)
    return f"({coeff.numerator}/{coeff.denominator})"


def _render_poly(terms: List[Tuple[int, Fraction]]) -> str:
    parts: List[str] = []
    for index, (exp, coeff) in enumerate(terms):
        sign = "-" if coeff < 0 else "+"
        mag = abs(coeff)
        power = _render_power(exp)
        if not power:
            body = str(mag.numerator) if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}"
        elif mag == 1:
            body = power
        else:
            body = f"{_render_coefficient(mag)}*{power}"
        if index == 0:
            parts.append(f"-{body}" if sign == "-" else body)
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


ZERO = MotivicScalar.of(0)
ONE = MotivicScalar.of(1)
V = MotivicScalar.half_power(1)
L = MotivicScalar.half_power(2)


def adams(k: int, a: MotivicScalar, convention: Optional[LambdaConvention] = None) -> MotivicScalar:
    """The Adams operation psi_k: substitute v -> s*v^k with s fixed by the λ-convention."""
    if k < 1:
        raise ValueError(f"Adams operations need k >= 1, got {k}")
    if k == 1:
        return a
    sign = (convention or _default_convention).adams_sign(k)

    def substitute(poly):
        return RING.from_dict({(exp * k,): c * (sign ** exp) for (exp,), c in poly.items()})

    return MotivicScalar(FIELD.new(substitute(a.frac.numer), substitute(a.frac.denom)))


def evaluate_at_lefschetz(a: MotivicScalar, value: Fraction) -> Fraction:
    """Value of an even scalar at L = value."""
    if not a.is_even:
        raise OddHalfPower(f"{a} involves an odd power of L^(1/2)")
    den = sum((c * value ** (exp // 2) for exp, c in a.denominator_terms()), Fraction(0))
    if den == 0:
        raise PoleAtPrime(f"Denominator of {a} vanishes at L = {value}")
    num = sum((c * value ** (exp // 2) for exp, c in a.numerator_terms()), Fraction(0))
    return num / den


def specialize_at_prime(a: MotivicScalar, p: int) -> Fraction:
    """Point-count specialization L -> p."""
    if not isprime(p):
        raise NotPrime(f"{p!r} is not prime")
    return evaluate_at_lefschetz(a, Fraction(p))


def euler_specialize(a: MotivicScalar) -> Fraction:
    """Euler-characteristic specialization L^(1/2) -> -1."""
    den = sum((c * (-1) ** exp for exp, c in a.denominator_terms()), Fraction(0))
    if den == 0:
        raise PoleAtMinusOne(f"{a} has a pole at L^(1/2) = -1")
    num = sum((c * (-1) ** exp for exp, c in a.numerator_terms()), Fraction(0))
    return num / den
