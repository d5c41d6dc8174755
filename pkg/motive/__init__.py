"""
Motive ring and power series

Exact rational functions in L^(1/2), truncated multivariate series over them, and the
plethystic Exp/Log used by the DT engine.
"""

from motive.scalar import (
    L,
    ONE,
    V,
    ZERO,
    LambdaConvention,
    MotivicScalar,
    adams,
    default_convention,
    euler_specialize,
    set_default_convention,
    specialize_at_prime,
)
from motive.series import (
    ClosedFormTerm,
    MSeries,
    adams_series,
    expand_closed_form,
    plethystic_exp,
    plethystic_log,
)
from motive.text import parse_scalar, render_scalar

__all__ = [
    "L",
    "ONE",
    "V",
    "ZERO",
    "LambdaConvention",
    "MotivicScalar",
    "adams",
    "default_convention",
    "euler_specialize",
    "set_default_convention",
    "specialize_at_prime",
    "ClosedFormTerm",
    "MSeries",
    "adams_series",
    "expand_closed_form",
    "plethystic_exp",
    "plethystic_log",
    "parse_scalar",
    "render_scalar",
]
