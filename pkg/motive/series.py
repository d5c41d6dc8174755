"""
Truncated multivariate power series over MotivicScalar, with Adams operations and the
plethystic Exp/Log.

Keys are dimension vectors (tuples of non-negative ints); a series only stores keys with
total degree at most its truncation, absent keys are zero.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from sympy.ntheory import mobius

from motive.errors import (
    ConstantTermNotOne,
    NonzeroConstantTerm,
    SeriesShapeMismatch,
    ZeroNumeratorExponent,
)
from motive.scalar import (
    ONE,
    LambdaConvention,
    MotivicScalar,
    adams,
    evaluate_at_lefschetz,
    specialize_at_prime,
)

logger = logging.getLogger(__name__)

Alpha = Tuple[int, ...]


def degree(alpha: Sequence[int]) -> int:
    return sum(alpha)


def keys_up_to(num_vars: int, truncation: int) -> List[Alpha]:
    """All dimension vectors with |alpha| <= truncation, graded by degree then lexicographic."""
    keys: List[Alpha] = []
    for total in range(truncation + 1):
        for combo in itertools.combinations_with_replacement(range(num_vars), total):
            alpha = [0] * num_vars
            for index in combo:
                alpha[index] += 1
            keys.append(tuple(alpha))
    return sorted(set(keys), key=lambda a: (degree(a), a))


@dataclass(frozen=True)
class ClosedFormTerm:
    """motive * t^numerator_exponent / (1 - t^period)."""

    motive: MotivicScalar
    numerator_exponent: Alpha
    period: Alpha

    def __post_init__(self):
        if not any(self.numerator_exponent):
            raise ZeroNumeratorExponent(f"Numerator exponent {self.numerator_exponent} is zero")
        if not any(self.period):
            raise ZeroNumeratorExponent(f"Period {self.period} is zero")
        if len(self.numerator_exponent) != len(self.period):
            raise SeriesShapeMismatch("Numerator exponent and period differ in length")

    def scaled(self, factor) -> "ClosedFormTerm":
        return ClosedFormTerm(self.motive * factor, self.numerator_exponent, self.period)

    def to_dict(self) -> dict:
        return {
            "motive": self.motive.render(),
            "numerator_exponent": list(self.numerator_exponent),
            "period": list(self.period),
        }


@dataclass(frozen=True)
class MSeries:
    num_vars: int
    truncation: int
    coeffs: Dict[Alpha, MotivicScalar] = field(default_factory=dict)

    def __post_init__(self):
        if self.num_vars < 1 or self.truncation < 0:
            raise SeriesShapeMismatch(f"Invalid series shape ({self.num_vars} vars, N={self.truncation})")
        cleaned: Dict[Alpha, MotivicScalar] = {}
        for alpha, value in self.coeffs.items():
            alpha = tuple(int(x) for x in alpha)
            if len(alpha) != self.num_vars or min(alpha) < 0:
                raise SeriesShapeMismatch(f"Key {alpha} does not fit {self.num_vars} variables")
            value = MotivicScalar.of(value)
            if degree(alpha) <= self.truncation and not value.is_zero:
                cleaned[alpha] = value
        object.__setattr__(self, "coeffs", cleaned)

    # -- constructors ---------------------------------------------------------------

    @classmethod
    def zero(cls, num_vars: int, truncation: int) -> "MSeries":
        return cls(num_vars, truncation, {})

    @classmethod
    def one(cls, num_vars: int, truncation: int) -> "MSeries":
        return cls(num_vars, truncation, {(0,) * num_vars: ONE})

    @classmethod
    def monomial(cls, num_vars: int, truncation: int, alpha: Sequence[int], value=ONE) -> "MSeries":
        return cls(num_vars, truncation, {tuple(alpha): MotivicScalar.of(value)})

    # -- access ---------------------------------------------------------------------

    def coefficient(self, alpha: Sequence[int]) -> MotivicScalar:
        alpha = tuple(alpha)
        if len(alpha) != self.num_vars:
            raise SeriesShapeMismatch(f"Key {alpha} does not fit {self.num_vars} variables")
        return self.coeffs.get(alpha, MotivicScalar.of(0))

    def items(self) -> Iterator[Tuple[Alpha, MotivicScalar]]:
        """Stored coefficients in lexicographic key order."""
        for alpha in sorted(self.coeffs):
            yield alpha, self.coeffs[alpha]

    @property
    def constant_term(self) -> MotivicScalar:
        return self.coefficient((0,) * self.num_vars)

    def _check_shape(self, other: "MSeries") -> None:
        if not isinstance(other, MSeries):
            raise TypeError(f"Expected an MSeries, got {type(other).__name__}")
        if (self.num_vars, self.truncation) != (other.num_vars, other.truncation):
            raise SeriesShapeMismatch(
                f"Shape mismatch: ({self.num_vars}, N={self.truncation}) vs ({other.num_vars}, N={other.truncation})"
            )

    # -- arithmetic -----------------------------------------------------------------

    def __add__(self, other: "MSeries") -> "MSeries":
        self._check_shape(other)
        out = dict(self.coeffs)
        for alpha, value in other.coeffs.items():
            out[alpha] = out[alpha] + value if alpha in out else value
        return MSeries(self.num_vars, self.truncation, out)

    def __neg__(self) -> "MSeries":
        return MSeries(self.num_vars, self.truncation, {a: -c for a, c in self.coeffs.items()})

    def __sub__(self, other: "MSeries") -> "MSeries":
        return self + (-other)

    def scale(self, factor) -> "MSeries":
        return MSeries(self.num_vars, self.truncation, {a: c * factor for a, c in self.coeffs.items()})

    def __mul__(self, other: "MSeries") -> "MSeries":
        self._check_shape(other)
        out: Dict[Alpha, MotivicScalar] = {}
        for a, ca in self.coeffs.items():
            da = degree(a)
            for b, cb in other.coeffs.items():
                if da + degree(b) > self.truncation:
                    continue
                key = tuple(x + y for x, y in zip(a, b))
                out[key] = out[key] + ca * cb if key in out else ca * cb
        return MSeries(self.num_vars, self.truncation, out)

    def table_rows(self) -> List[dict]:
        """One {alpha, value} row per stored coefficient."""
        return [{"alpha": list(alpha), "value": value.render()} for alpha, value in self.items()]

    def to_dict(self) -> dict:
        return {"truncation": self.truncation, "vars": self.num_vars, "coeffs": self.table_rows()}


def adams_series(k: int, f: MSeries, convention: Optional[LambdaConvention] = None) -> MSeries:
    """psi_k on series: c t^alpha -> psi_k(c) t^(k alpha); keys beyond the truncation drop out."""
    if k < 1:
        raise ValueError(f"Adams operations need k >= 1, got {k}")
    out = {}
    for alpha, value in f.coeffs.items():
        if k * degree(alpha) <= f.truncation:
            out[tuple(k * x for x in alpha)] = adams(k, value, convention)
    return MSeries(f.num_vars, f.truncation, out)


def _euler_exp(g: MSeries) -> MSeries:
    """Ordinary exp of a series without constant term, via the Euler-operator recurrence."""
    zero = (0,) * g.num_vars
    result: Dict[Alpha, MotivicScalar] = {zero: ONE}
    support = sorted(g.coeffs.items(), key=lambda item: degree(item[0]))
    for alpha in keys_up_to(g.num_vars, g.truncation)[1:]:
        total = degree(alpha)
        acc = None
        for beta, g_beta in support:
            rest = tuple(a - b for a, b in zip(alpha, beta))
            if min(rest) < 0:
                continue
            prev = result.get(rest)
            if prev is None:
                continue
            term = g_beta * prev * degree(beta)
            acc = term if acc is None else acc + term
        if acc is not None and not acc.is_zero:
            result[alpha] = acc * Fraction(1, total)
    return MSeries(g.num_vars, g.truncation, result)


def _euler_log(f: MSeries) -> MSeries:
    """Ordinary log of a series with constant term 1."""
    zero = (0,) * f.num_vars
    result: Dict[Alpha, MotivicScalar] = {}
    for alpha in keys_up_to(f.num_vars, f.truncation)[1:]:
        total = degree(alpha)
        acc = f.coeffs.get(alpha, MotivicScalar.of(0)) * total
        for beta, l_beta in list(result.items()):
            rest = tuple(a - b for a, b in zip(alpha, beta))
            if min(rest) < 0 or rest == zero:
                continue
            f_rest = f.coeffs.get(rest)
            if f_rest is not None:
                acc = acc - l_beta * f_rest * degree(beta)
        if not acc.is_zero:
            result[alpha] = acc * Fraction(1, total)
    return MSeries(f.num_vars, f.truncation, result)


def plethystic_exp(f: MSeries, convention: Optional[LambdaConvention] = None) -> MSeries:
    """Exp(f) = exp(sum_k psi_k(f)/k) for f without constant term."""
    if not f.constant_term.is_zero:
        raise NonzeroConstantTerm(f"Exp needs a zero constant term, got {f.constant_term}")
    g = MSeries.zero(f.num_vars, f.truncation)
    for k in range(1, f.truncation + 1):
        psi = adams_series(k, f, convention)
        if psi.coeffs:
            g = g + psi.scale(Fraction(1, k))
    return _euler_exp(g)


def plethystic_log(f: MSeries, convention: Optional[LambdaConvention] = None) -> MSeries:
    """Log(f) = sum_k mu(k)/k psi_k(log f) for f with constant term 1."""
    if f.constant_term != ONE:
        raise ConstantTermNotOne(f"Log needs constant term 1, got {f.constant_term}")
    log_f = _euler_log(f)
    out = MSeries.zero(f.num_vars, f.truncation)
    for k in range(1, f.truncation + 1):
        mu = int(mobius(k))
        if mu == 0:
            continue
        psi = adams_series(k, log_f, convention)
        if psi.coeffs:
            out = out + psi.scale(Fraction(mu, k))
    return out


def expand_closed_form(terms: Iterable[ClosedFormTerm], truncation: int, num_vars: Optional[int] = None) -> MSeries:
    """Sum of motive * sum_j t^(a + j b), truncated at total degree `truncation`."""
    terms = list(terms)
    if num_vars is None:
        if not terms:
            raise SeriesShapeMismatch("Cannot infer the number of variables from an empty term list")
        num_vars = len(terms[0].numerator_exponent)
    out: Dict[Alpha, MotivicScalar] = {}
    for term in terms:
        if len(term.numerator_exponent) != num_vars:
            raise SeriesShapeMismatch(f"Term {term.numerator_exponent} does not fit {num_vars} variables")
        alpha = term.numerator_exponent
        while degree(alpha) <= truncation:
            out[alpha] = out[alpha] + term.motive if alpha in out else term.motive
            alpha = tuple(a + b for a, b in zip(alpha, term.period))
    return MSeries(num_vars, truncation, out)


def sigma_operations(n: int, a: MotivicScalar, convention: Optional[LambdaConvention] = None) -> List[MotivicScalar]:
    """sigma_0..sigma_n of a scalar from the Newton recurrence m sigma_m = sum_k psi_k sigma_(m-k)."""
    sigmas = [ONE]
    psis = [adams(k, a, convention) for k in range(1, n + 1)]
    for m in range(1, n + 1):
        acc = MotivicScalar.of(0)
        for k in range(1, m + 1):
            acc = acc + psis[k - 1] * sigmas[m - k]
        sigmas.append(acc * Fraction(1, m))
    return sigmas


def exp_single_term_by_sigma(value: MotivicScalar, alpha: Sequence[int], truncation: int,
                             convention: Optional[LambdaConvention] = None) -> MSeries:
    """Exp(value * t^alpha) = sum_n sigma_n(value) t^(n alpha)."""
    alpha = tuple(alpha)
    if not any(alpha):
        raise NonzeroConstantTerm("Exp needs a term of positive degree")
    count = truncation // degree(alpha)
    sigmas = sigma_operations(count, value, convention)
    return MSeries(
        len(alpha),
        truncation,
        {tuple(n * x for x in alpha): sigmas[n] for n in range(count + 1)},
    )


def specialize_series(f: MSeries, p: int) -> Dict[Alpha, Fraction]:
    """Every coefficient at L = p."""
    return {alpha: specialize_at_prime(value, p) for alpha, value in f.items()}


def exp_specialized(f: MSeries, p: int) -> Dict[Alpha, Fraction]:
    """
    Exp computed directly over the rationals at L = p, with psi_k acting as L -> p^k.

    Coefficients must be even in L^(1/2).
    """
    if not f.constant_term.is_zero:
        raise NonzeroConstantTerm(f"Exp needs a zero constant term, got {f.constant_term}")
    g: Dict[Alpha, Fraction] = {}
    for k in range(1, f.truncation + 1):
        for alpha, value in f.coeffs.items():
            if k * degree(alpha) > f.truncation:
                continue
            key = tuple(k * x for x in alpha)
            g[key] = g.get(key, Fraction(0)) + evaluate_at_lefschetz(value, Fraction(p) ** k) / k
    zero = (0,) * f.num_vars
    result: Dict[Alpha, Fraction] = {zero: Fraction(1)}
    for alpha in keys_up_to(f.num_vars, f.truncation)[1:]:
        acc = Fraction(0)
        for beta, g_beta in g.items():
            rest = tuple(a - b for a, b in zip(alpha, beta))
            if min(rest) >= 0 and rest in result:
                acc += g_beta * result[rest] * degree(beta)
        if acc:
            result[alpha] = acc / degree(alpha)
    return result
