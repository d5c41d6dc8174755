"""
DT engine

Closed-form universal series for the quantum C^3, Jordan, conifold and cyclic families, the
dimensional-reduction prefactor, and the reduced classes the finite-field oracle checks.
"""

from dt.engine import (
    dimred_exponent,
    dimred_prefactor,
    euler_numerators,
    family_for_model,
    predicted_ratio,
    reduced_class,
    reduced_classes,
    theorem_series,
)
from dt.strata import QUANTUM_STRATA, Constraint, stratum_series, stratum_terms
from dt.theorems import (
    Branch,
    Family,
    FamilyKind,
    TheoremSpec,
    commutative_spec,
    commutative_terms,
    cyclic_roots,
    generic_is_valid,
)

__all__ = [
    "dimred_exponent",
    "dimred_prefactor",
    "euler_numerators",
    "family_for_model",
    "predicted_ratio",
    "reduced_class",
    "reduced_classes",
    "theorem_series",
    "QUANTUM_STRATA",
    "Constraint",
    "stratum_series",
    "stratum_terms",
    "Branch",
    "Family",
    "FamilyKind",
    "TheoremSpec",
    "commutative_spec",
    "commutative_terms",
    "cyclic_roots",
    "generic_is_valid",
]
