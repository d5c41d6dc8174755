"""
Closed forms for the nilpotent/invertible strata of q-commuting matrix pairs.

A pair (A, B) with AB = qBA splits into the parts where each of A and B is nilpotent (N) or
invertible (I). The four stratum series multiply to the quantum C^3 series:

    U^NN = Exp(1/(L-1) t/(1-t)),  U^NI = U^IN = Exp(t/(1-t)),
    U^II = 1 for generic q, Exp((L-1) t^r/(1-t^r)) when q has order r.
"""

from __future__ import annotations

from enum import Enum
from typing import Optional, Tuple

from dt.errors import TheoremError
from motive.scalar import ONE, V
from motive.series import ClosedFormTerm, MSeries, expand_closed_form, plethystic_exp

L = V * V


class Constraint(Enum):
    NILPOTENT = "N"
    INVERTIBLE = "I"
    ANY = "*"

    @classmethod
    def parse(cls, text: str) -> "Constraint":
        key = text.strip().lower()
        for member in cls:
            if key in (member.value.lower(), member.name.lower()):
                return member
        raise TheoremError(f"Unknown stratum constraint {text!r}; use nilpotent, invertible or any")


QUANTUM_STRATA: Tuple[Tuple[Constraint, Constraint], ...] = (
    (Constraint.INVERTIBLE, Constraint.INVERTIBLE),
    (Constraint.INVERTIBLE, Constraint.NILPOTENT),
    (Constraint.NILPOTENT, Constraint.INVERTIBLE),
    (Constraint.NILPOTENT, Constraint.NILPOTENT),
)


def stratum_terms(a: Constraint, b: Constraint, order: Optional[int] = None) -> Tuple[ClosedFormTerm, ...]:
    if Constraint.ANY in (a, b):
        raise TheoremError("Stratum closed forms need both maps constrained")
    if a is Constraint.NILPOTENT and b is Constraint.NILPOTENT:
        return (ClosedFormTerm(ONE / (L - 1), (1,), (1,)),)
    if a is not b:
        return (ClosedFormTerm(ONE, (1,), (1,)),)
    if order is None:
        return ()
    return (ClosedFormTerm(L - 1, (order,), (order,)),)


def stratum_series(a: Constraint, b: Constraint, truncation: int, order: Optional[int] = None) -> MSeries:
    """U^{ab} for q-commuting pairs; `order` is the multiplicative order of q, None for generic."""
    terms = stratum_terms(a, b, order)
    return plethystic_exp(expand_closed_form(terms, truncation, num_vars=1))
