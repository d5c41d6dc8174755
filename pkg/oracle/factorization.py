"""
Count-level shadows of the nilpotent/invertible factorization.

For the quantum plane the two loops are split into the four strata (I,I), (I,N), (N,I), (N,N);
for the conifold the endomorphism formed by one arrow in each direction is split into its
nilpotent and invertible parts. Each stratum gives a series sum_alpha [R^stratum]/[G_alpha] t^alpha
from exhaustive counts, and the strata multiply to the unstratified series.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import config
from dt.errors import TheoremError
from dt.strata import QUANTUM_STRATA, Constraint, stratum_series
from dt.theorems import FamilyKind
from motive.scalar import MotivicScalar
from motive.series import Alpha, MSeries, keys_up_to, specialize_series
from oracle.counting import count_representations
from oracle.errors import OracleError
from oracle.finite_field import check_prime, multiplicative_order, reduce_assignment
from oracle.plan import CountTask, Stratum, StratumConstraint, stratum_label
from oracle.verify import deformation_parameter, render_fraction
from quivers.model import QuiverModel
from quivers.potential import ReducedPresentation, reduced_presentation

logger = logging.getLogger(__name__)

DEFAULT_TRUNCATION = 2


@dataclass
class StratumResult:
    label: str
    coefficients: Dict[Alpha, Fraction]
    closed_form_matches: Optional[bool] = None

    def to_dict(self) -> dict:
        out = {
            "stratum": self.label,
            "coefficients": {",".join(map(str, a)): render_fraction(v) for a, v in sorted(self.coefficients.items())},
        }
        if self.closed_form_matches is not None:
            out["closed_form_matches"] = self.closed_form_matches
        return out


@dataclass
class FactorizationReport:
    family: str
    p: int
    params: Mapping[str, int]
    truncation: int
    strata: List[StratumResult] = field(default_factory=list)
    total: Dict[Alpha, Fraction] = field(default_factory=dict)
    product: Dict[Alpha, Fraction] = field(default_factory=dict)

    @property
    def product_matches(self) -> bool:
        return self.total == self.product

    @property
    def passed(self) -> bool:
        return self.product_matches and all(s.closed_form_matches is not False for s in self.strata)

    def to_dict(self, timings: bool = True) -> dict:
        return {
            "family": self.family,
            "p": self.p,
            "params": dict(sorted(self.params.items())),
            "truncation": self.truncation,
            "strata": [s.to_dict() for s in self.strata],
            "total": {",".join(map(str, a)): render_fraction(v) for a, v in sorted(self.total.items())},
            "product_matches": self.product_matches,
            "pass": self.passed,
        }


@dataclass
class QIndependenceReport:
    p: int
    parameter: str
    # stratum label -> alpha -> count for q = 1..p-1
    counts: Dict[str, Dict[Alpha, List[int]]] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(len(set(values)) == 1 for per_alpha in self.counts.values() for values in per_alpha.values())

    def to_dict(self, timings: bool = True) -> dict:
        return {
            "p": self.p,
            "parameter": self.parameter,
            "counts": {
                label: {",".join(map(str, a)): values for a, values in sorted(per_alpha.items())}
                for label, per_alpha in sorted(self.counts.items())
            },
            "pass": self.passed,
        }


def _nonzero_keys(num_vars: int, truncation: int) -> List[Alpha]:
    return keys_up_to(num_vars, truncation)[1:]


def stratified_series(model: QuiverModel, cut: Optional[Iterable[str]], strata: Stratum, p: int,
                      params: Mapping[str, int], truncation: int, cap: Optional[int] = None,
                      jobs: int = 1) -> MSeries:
    """1 + sum over 0 < |alpha| <= N of [R^strata(alpha)]/[G_alpha] t^alpha, coefficients rational."""
    presentation = reduced_presentation(model, cut)
    return _series_from_counts(presentation, strata, p, params, truncation, cap, jobs)


def _series_from_counts(presentation: ReducedPresentation, strata: Stratum, p: int, params: Mapping[str, int],
                        truncation: int, cap: Optional[int], jobs: int) -> MSeries:
    num_vars = len(presentation.quiver.vertices)
    coeffs: Dict[Alpha, MotivicScalar] = {(0,) * num_vars: MotivicScalar.of(1)}
    for alpha in _nonzero_keys(num_vars, truncation):
        task = CountTask(
            presentation=presentation,
            alpha=alpha,
            p=p,
            params=params,
            cap=cap if cap is not None else config.ORACLE_CAP,
            strata=strata,
        )
        report = count_representations(task, jobs=jobs)
        coeffs[alpha] = MotivicScalar.of(report.ratio)
    return MSeries(num_vars, truncation, coeffs)


def _specialized(series: MSeries, p: int) -> Dict[Alpha, Fraction]:
    values = specialize_series(series, p)
    return {alpha: values.get(alpha, Fraction(0)) for alpha in keys_up_to(series.num_vars, series.truncation)}


def quantum_strata(arrows: Sequence[str]) -> List[Tuple[Tuple[Constraint, Constraint], Stratum]]:
    first, second = arrows
    return [
        ((a, b), (StratumConstraint((first,), a), StratumConstraint((second,), b)))
        for a, b in QUANTUM_STRATA
    ]


def conifold_block(presentation: ReducedPresentation) -> Tuple[str, str]:
    """One non-cut arrow each way between the two vertices: the first forward, the last backward."""
    quiver = presentation.quiver
    forward = [a.name for a in quiver.arrows if (a.source, a.target) == (quiver.vertices[0], quiver.vertices[1])]
    backward = [a.name for a in quiver.arrows if (a.source, a.target) == (quiver.vertices[1], quiver.vertices[0])]
    if not forward or not backward:
        raise OracleError("The cut quiver has no arrow pair forming an endomorphism of V_0 + V_1")
    return forward[0], backward[-1]


def check_factorization(model: QuiverModel, cut: Optional[Iterable[str]], p: int, params: Mapping[str, int],
                        truncation: int = DEFAULT_TRUNCATION, family: Optional[str] = None,
                        block: Optional[Sequence[str]] = None, cap: Optional[int] = None,
                        jobs: int = 1) -> FactorizationReport:
    """Product of the stratum series against the total series, coefficient by coefficient at L = p."""
    from dt.engine import family_for_model

    resolved = family_for_model(model, family)
    p = check_prime(p)
    params = reduce_assignment(params, model.params, p)
    if truncation < 1:
        raise TheoremError(f"Truncation must be >= 1, got {truncation}")
    presentation = reduced_presentation(model, cut)
    report = FactorizationReport(resolved.label, p, params, truncation)

    report.total = _specialized(_series_from_counts(presentation, (), p, params, truncation, cap, jobs), p)
    product = MSeries.one(len(model.vertices), truncation)

    if resolved.kind is FamilyKind.QUANTUM_C3:
        loops = [a.name for a in presentation.quiver.arrows]
        if len(loops) != 2:
            raise OracleError(f"Expected two loops after the cut, found {loops}")
        name = deformation_parameter(model)
        order = multiplicative_order(params[name], p) if name in params else None
        for (a, b), stratum in quantum_strata(loops):
            series = _series_from_counts(presentation, stratum, p, params, truncation, cap, jobs)
            product = product * series
            observed = _specialized(series, p)
            expected = _specialized(stratum_series(a, b, truncation, order), p)
            report.strata.append(StratumResult(stratum_label(stratum), observed, observed == expected))
    elif resolved.kind is FamilyKind.CONIFOLD:
        arrows = tuple(block) if block else conifold_block(presentation)
        for constraint in (Constraint.NILPOTENT, Constraint.INVERTIBLE):
            stratum = (StratumConstraint(arrows, constraint),)
            series = _series_from_counts(presentation, stratum, p, params, truncation, cap, jobs)
            product = product * series
            report.strata.append(StratumResult(stratum_label(stratum), _specialized(series, p)))
    else:
        raise TheoremError(f"No stratification is defined for family {resolved}")

    report.product = _specialized(product, p)
    status = "✅" if report.passed else "❌"
    logger.info(f"{status} Factorization for {resolved} over F_{p} up to N={truncation}")
    return report


def check_q_independence(model: QuiverModel, cut: Optional[Iterable[str]], p: int,
                         truncation: int = DEFAULT_TRUNCATION, params: Optional[Mapping[str, int]] = None,
                         cap: Optional[int] = None, jobs: int = 1) -> QIndependenceReport:
    """Counts of every stratum with a nilpotent loop, for each q in F_p^x; they must agree."""
    p = check_prime(p)
    name = deformation_parameter(model)
    if name is None:
        raise OracleError("q-independence needs a model with one deformation parameter")
    presentation = reduced_presentation(model, cut)
    loops = [a.name for a in presentation.quiver.arrows]
    if len(loops) != 2:
        raise OracleError(f"Expected two loops after the cut, found {loops}")
    fixed = {k: v for k, v in (params or {}).items() if k != name}
    report = QIndependenceReport(p, name)
    strata = [s for (a, b), s in quantum_strata(loops) if Constraint.NILPOTENT in (a, b)]
    for stratum in strata:
        per_alpha: Dict[Alpha, List[int]] = {}
        for alpha in _nonzero_keys(len(model.vertices), truncation):
            counts = []
            for q in range(1, p):
                task = CountTask(
                    presentation=presentation,
                    alpha=alpha,
                    p=p,
                    params={**fixed, name: q},
                    cap=cap if cap is not None else config.ORACLE_CAP,
                    strata=stratum,
                )
                counts.append(count_representations(task, jobs=jobs).representation_count)
            per_alpha[alpha] = counts
        report.counts[stratum_label(stratum)] = per_alpha
    status = "✅" if report.passed else "❌"
    logger.info(f"{status} Nilpotent strata independent of {name} over F_{p} up to N={truncation}")
    return report
