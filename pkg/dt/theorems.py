"""
Closed forms of the universal DT series for the four deformation families.

Each family contributes a generic term list; at a root-of-unity branch the series is
multiplied by one further Exp factor, so RootOfUnity(r) = generic terms + correction terms.
Term lists are fixed data, not derived from the potential.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Tuple

from dt.errors import TheoremError, UnsupportedBranch
from motive.scalar import ONE, V, MotivicScalar
from motive.series import Alpha, ClosedFormTerm

logger = logging.getLogger(__name__)

L = V * V
_DIFF = V - V ** -1

_FAMILY_RE = re.compile(r"^\s*(?P<kind>[a-z_0-9]+)\s*(?:[(:]\s*(?P<n>\d+)\s*\)?)?\s*$")
_BRANCH_RE = re.compile(r"^\s*(?:generic|root:(?P<r>\d+))\s*$")


class FamilyKind(Enum):
    QUANTUM_C3 = "quantum_c3"
    JORDAN = "jordan"
    CONIFOLD = "conifold"
    CYCLIC = "cyclic"


@dataclass(frozen=True, slots=True)
class Family:
    kind: FamilyKind
    n: int = 0

    def __post_init__(self):
        if self.kind is FamilyKind.CYCLIC and self.n < 1:
            raise TheoremError(f"The cyclic family needs n >= 1, got {self.n}")
        if self.kind is not FamilyKind.CYCLIC and self.n:
            raise TheoremError(f"Family {self.kind.value} takes no index")

    @classmethod
    def parse(cls, text: str) -> "Family":
        """`quantum_c3`, `jordan`, `conifold`, `cyclic(2)` or `cyclic:2`."""
        match = _FAMILY_RE.match(text)
        if not match:
            raise TheoremError(f"Unknown family {text!r}")
        try:
            kind = FamilyKind(match.group("kind"))
        except ValueError:
            raise TheoremError(f"Unknown family {text!r}") from None
        n = int(match.group("n")) if match.group("n") else 0
        if kind is FamilyKind.CYCLIC and not n:
            raise TheoremError(f"Cyclic family needs an index, e.g. cyclic(2), got {text!r}")
        return cls(kind, n)

    @property
    def label(self) -> str:
        return f"cyclic({self.n})" if self.kind is FamilyKind.CYCLIC else self.kind.value

    @property
    def num_vertices(self) -> int:
        return {
            FamilyKind.QUANTUM_C3: 1,
            FamilyKind.JORDAN: 1,
            FamilyKind.CONIFOLD: 2,
        }.get(self.kind, self.n + 1)

    @property
    def is_deformed(self) -> bool:
        """Whether the family carries the parameter q (and so has root-of-unity branches)."""
        return self.kind is not FamilyKind.JORDAN

    @property
    def correction_support(self) -> int:
        """|b| for the correction period r*b; the correction first appears in degree r*|b|."""
        return {
            FamilyKind.QUANTUM_C3: 1,
            FamilyKind.CONIFOLD: 2,
        }.get(self.kind, self.n + 1)

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True, slots=True)
class Branch:
    """Generic q (order None) or q a primitive r-th root of unity."""

    order: Optional[int] = None

    def __post_init__(self):
        if self.order is not None and self.order < 1:
            raise UnsupportedBranch(f"Root-of-unity order must be >= 1, got {self.order}")

    @classmethod
    def generic(cls) -> "Branch":
        return cls(None)

    @classmethod
    def root(cls, r: int) -> "Branch":
        return cls(int(r))

    @classmethod
    def parse(cls, text: str) -> "Branch":
        match = _BRANCH_RE.match(text)
        if not match:
            raise UnsupportedBranch(f"Branch must be 'generic' or 'root:<r>', got {text!r}")
        return cls.root(int(match.group("r"))) if match.group("r") else cls.generic()

    @property
    def is_generic(self) -> bool:
        return self.order is None

    @property
    def label(self) -> str:
        return "generic" if self.order is None else f"root:{self.order}"

    def __str__(self) -> str:
        return self.label


def unit(num_vars: int, index: int) -> Alpha:
    return tuple(1 if i == index else 0 for i in range(num_vars))


def cyclic_delta(n: int) -> Alpha:
    return (1,) * (n + 1)


def cyclic_roots(n: int) -> List[Alpha]:
    """
    delta_i + ... + delta_(i+k) for i in 0..n and k in 0..n-1, indices mod n+1; wrap-around
    vectors such as delta_n + delta_0 included.
    """
    size = n + 1
    roots = []
    for i in range(size):
        for k in range(n):
            alpha = [0] * size
            for j in range(i, i + k + 1):
                alpha[j % size] = 1
            roots.append(tuple(alpha))
    return sorted(set(roots))


def _generic_terms(family: Family) -> List[ClosedFormTerm]:
    if family.kind is FamilyKind.QUANTUM_C3:
        return [ClosedFormTerm((2 * L - 1) / (L - 1), (1,), (1,))]
    if family.kind is FamilyKind.JORDAN:
        return [ClosedFormTerm(L / (L - 1), (1,), (1,))]
    if family.kind is FamilyKind.CONIFOLD:
        delta = (1, 1)
        return [
            ClosedFormTerm((3 * V - V ** -1) / _DIFF, delta, delta),
            ClosedFormTerm(-ONE / _DIFF, (1, 0), delta),
            ClosedFormTerm(-ONE / _DIFF, (0, 1), delta),
        ]
    delta = cyclic_delta(family.n)
    terms = [ClosedFormTerm(((family.n + 2) * V - V ** -1) / _DIFF, delta, delta)]
    terms.extend(ClosedFormTerm(V / _DIFF, alpha, delta) for alpha in cyclic_roots(family.n))
    return terms


def _correction_terms(family: Family, r: int) -> List[ClosedFormTerm]:
    if family.kind is FamilyKind.QUANTUM_C3:
        exponent: Alpha = (r,)
    elif family.kind is FamilyKind.CONIFOLD:
        exponent = (r, r)
    else:
        exponent = tuple(r * x for x in cyclic_delta(family.n))
    return [ClosedFormTerm(L - 1, exponent, exponent)]


@dataclass(frozen=True, slots=True)
class TheoremSpec:
    family: Family
    branch: Branch = Branch()

    def __post_init__(self):
        if not self.branch.is_generic and not self.family.is_deformed:
            raise UnsupportedBranch(f"Family {self.family} has no parameter, only the generic branch exists")

    @property
    def num_vars(self) -> int:
        return self.family.num_vertices

    @property
    def terms(self) -> Tuple[ClosedFormTerm, ...]:
        terms = _generic_terms(self.family)
        if not self.branch.is_generic:
            terms.extend(_correction_terms(self.family, self.branch.order))
        return tuple(terms)

    @property
    def correction_degree(self) -> Optional[int]:
        """Lowest total degree touched by the root-of-unity correction, None when generic."""
        if self.branch.is_generic:
            return None
        return self.branch.order * self.family.correction_support

    @property
    def label(self) -> str:
        return f"{self.family.label} {self.branch.label}"

    def to_dict(self) -> dict:
        return {
            "family": self.family.label,
            "branch": self.branch.label,
            "terms": [term.to_dict() for term in self.terms],
        }


def generic_is_valid(family: Family, order: int, alpha_degree: int) -> bool:
    """
    Generic q cannot occur over F_p; order(q) stands in for it when the root-of-unity correction
    for that order starts above the degree being checked.
    """
    if not family.is_deformed:
        return True
    return order * family.correction_support > alpha_degree


def commutative_spec(family: Family) -> TheoremSpec:
    """q = 1: the RootOfUnity(1) branch, e.g. Exp(L^2/(L-1) t/(1-t)) for three commuting loops."""
    return TheoremSpec(family, Branch.root(1))


def commutative_terms(family: Family) -> Tuple[ClosedFormTerm, ...]:
    """The q = 1 term list with the correction merged into the matching generic term."""
    merged: dict = {}
    for term in commutative_spec(family).terms:
        key = (term.numerator_exponent, term.period)
        merged[key] = merged[key] + term.motive if key in merged else term.motive
    return tuple(ClosedFormTerm(motive, a, b) for (a, b), motive in merged.items())
