"""
Universal DT series from the closed forms, the dimensional-reduction prefactor and the
reduced class [R(J_{W,I}, alpha)]/[G_alpha] that point counts can check.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from dt.errors import TheoremError
from dt.theorems import Family, TheoremSpec
from motive.errors import OddHalfPower
from motive.scalar import V, LambdaConvention, MotivicScalar, euler_specialize, specialize_at_prime
from motive.series import MSeries, degree, expand_closed_form, keys_up_to, plethystic_exp
from quivers.model import QuiverModel
from quivers.potential import cut_degree, euler_form, resolve_cut

logger = logging.getLogger(__name__)


def theorem_series(spec: TheoremSpec, truncation: int, convention: Optional[LambdaConvention] = None) -> MSeries:
    """Exp of the closed-form term list, truncated at total degree N."""
    if truncation < 1:
        raise TheoremError(f"Truncation must be >= 1, got {truncation}")
    argument = expand_closed_form(spec.terms, truncation, spec.num_vars)
    series = plethystic_exp(argument, convention)
    logger.debug(f"Built {spec.label} series to N={truncation} ({len(series.coeffs)} coefficients)")
    return series


def family_for_model(model: QuiverModel, override: Optional[str] = None) -> Family:
    """The family named by `override`, else by the model's `family` directive."""
    label = override or model.family
    if not label:
        raise TheoremError("The model names no family; add a `family` line or pass one explicitly")
    family = Family.parse(label)
    if family.num_vertices != len(model.vertices):
        raise TheoremError(
            f"Family {family} has {family.num_vertices} vertices, the model has {len(model.vertices)}"
        )
    if family.is_deformed and not model.params:
        raise TheoremError(f"Family {family} needs a deformation parameter, the model declares none")
    return family


def dimred_exponent(model: QuiverModel, cut: Optional[Iterable[str]], alpha: Sequence[int]) -> int:
    """chi(alpha, alpha) + 2 d_I(alpha)."""
    cut = resolve_cut(model, cut)
    return euler_form(model, alpha, alpha) + 2 * cut_degree(model, cut, alpha)


def dimred_prefactor(model: QuiverModel, cut: Optional[Iterable[str]], alpha: Sequence[int]) -> MotivicScalar:
    """(-L^(1/2))^(chi(alpha, alpha) + 2 d_I(alpha)); the exponent may be negative or odd."""
    return (-V) ** dimred_exponent(model, cut, alpha)


def reduced_class(series: MSeries, model: QuiverModel, cut: Optional[Iterable[str]],
                  alpha: Sequence[int]) -> MotivicScalar:
    """c_alpha * (-L^(1/2))^-(chi(alpha, alpha) + 2 d_I(alpha)), asserted to lie in QQ(L)."""
    alpha = model.check_dimension(alpha)
    if degree(alpha) > series.truncation:
        raise TheoremError(f"Series truncated at N={series.truncation} has no coefficient at {alpha}")
    value = series.coefficient(alpha) * (-V) ** (-dimred_exponent(model, cut, alpha))
    if not value.is_even:
        raise OddHalfPower(f"Reduced class at {alpha} is not a function of L: {value}")
    return value


def predicted_ratio(spec: TheoremSpec, model: QuiverModel, cut: Optional[Iterable[str]],
                    alpha: Sequence[int], p: int, convention: Optional[LambdaConvention] = None) -> Tuple[MotivicScalar, Fraction]:
    """The reduced class at alpha and its value at L = p."""
    alpha = model.check_dimension(alpha)
    series = theorem_series(spec, max(degree(alpha), 1), convention)
    value = reduced_class(series, model, cut, alpha)
    return value, specialize_at_prime(value, p)


def reduced_classes(spec: TheoremSpec, model: QuiverModel, cut: Optional[Iterable[str]],
                    truncation: int, convention: Optional[LambdaConvention] = None) -> Dict[Tuple[int, ...], MotivicScalar]:
    """Every reduced class with |alpha| <= N (zero coefficients included as zero)."""
    series = theorem_series(spec, truncation, convention)
    out = {}
    for alpha in keys_up_to(spec.num_vars, truncation)[1:]:
        out[alpha] = reduced_class(series, model, cut, alpha)
    return out


def euler_numerators(spec: TheoremSpec) -> List[dict]:
    """
    Each Exp-argument term written as numerator/(L^(1/2) - L^(-1/2)), with the numerator's
    Euler-characteristic specialization L^(1/2) -> -1 (e.g. 3L^(1/2) - L^(-1/2) -> -2).
    """
    diff = V - V ** -1
    rows = []
    for term in spec.terms:
        numerator = term.motive * diff
        rows.append({
            "numerator_exponent": list(term.numerator_exponent),
            "period": list(term.period),
            "numerator": numerator.render(),
            "euler": str(euler_specialize(numerator)),
        })
    return rows
