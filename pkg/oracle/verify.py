"""
End-to-end check of a closed form against point counts: the reduced class predicted by the
theorem at L = p must equal [R(J_{W,I}, alpha)]/[G_alpha] counted over F_p.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Tuple

import config
from dt.engine import predicted_ratio
from dt.theorems import Branch, Family, TheoremSpec, generic_is_valid
from motive.errors import PoleAtPrime
from motive.scalar import LambdaConvention
from motive.series import degree
from oracle.counting import count_representations
from oracle.errors import BranchMismatch, CoefficientPole, OracleError
from oracle.finite_field import check_prime, multiplicative_order, reduce_assignment
from oracle.plan import CountTask
from quivers.model import QuiverModel
from quivers.potential import reduced_presentation, resolve_cut

logger = logging.getLogger(__name__)


def render_fraction(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


@dataclass
class VerificationReport:
    family: str
    branch: str
    branch_source: str
    alpha: Tuple[int, ...]
    p: int
    params: Mapping[str, int]
    q: Optional[int]
    order_q: Optional[int]
    predicted_class: str
    predicted: Fraction
    observed: Fraction
    representation_count: int
    gl_count: int
    passed: bool
    elapsed_ms: Optional[float] = None

    def to_dict(self, timings: bool = True) -> dict:
        out = {
            "family": self.family,
            "branch": self.branch,
            "branch_source": self.branch_source,
            "alpha": list(self.alpha),
            "p": self.p,
            "q": self.q,
            "order_q": self.order_q,
            "params": dict(sorted(self.params.items())),
            "predicted_class": self.predicted_class,
            "predicted": render_fraction(self.predicted),
            "observed": render_fraction(self.observed),
            "representation_count": self.representation_count,
            "gl_count": self.gl_count,
            "pass": self.passed,
        }
        if timings and self.elapsed_ms is not None:
            out["elapsed_ms"] = round(self.elapsed_ms, 3)
        return out


def deformation_parameter(model: QuiverModel) -> Optional[str]:
    """The parameter the branch is read from: `q` if declared, else the only parameter."""
    if "q" in model.params:
        return "q"
    if len(model.params) == 1:
        return model.params[0]
    return None


def parameter_order(model: QuiverModel, family: Family, params: Mapping[str, int], p: int) -> Tuple[Optional[int], Optional[int]]:
    """(q mod p, its multiplicative order), or (None, None) for families without a parameter."""
    if not family.is_deformed:
        return None, None
    name = deformation_parameter(model)
    if name is None:
        raise BranchMismatch(f"Cannot tell which of {list(model.params)} is the deformation parameter")
    if name not in params:
        raise BranchMismatch(f"Parameter {name} needs a value to choose the branch")
    q = int(params[name]) % p
    return q, multiplicative_order(q, p)


def select_branch(family: Family, order: Optional[int], alpha_degree: int, requested: str = "auto") -> Tuple[Branch, str]:
    """
    Branch for `requested` in {auto, generic, root:<r>}, checked against the order of q.
    Returns (branch, "auto" | "explicit").
    """
    if order is None:
        if requested not in ("auto", "generic"):
            raise BranchMismatch(f"Family {family} has no parameter, only the generic branch applies")
        return Branch.generic(), "auto" if requested == "auto" else "explicit"
    if requested == "auto":
        if generic_is_valid(family, order, alpha_degree):
            return Branch.generic(), "auto"
        return Branch.root(order), "auto"
    branch = Branch.parse(requested)
    check_branch(family, branch, order, alpha_degree)
    return branch, "explicit"


def check_branch(family: Family, branch: Branch, order: Optional[int], alpha_degree: int) -> None:
    if order is None:
        if not branch.is_generic:
            raise BranchMismatch(f"Family {family} has no parameter, only the generic branch applies")
        return
    if branch.is_generic:
        if not generic_is_valid(family, order, alpha_degree):
            raise BranchMismatch(
                f"q has order {order}: the root-of-unity correction starts in degree "
                f"{order * family.correction_support} <= |alpha| = {alpha_degree}, so the generic branch does not apply"
            )
    elif branch.order != order:
        raise BranchMismatch(f"Branch {branch} needs q of order {branch.order}, got order {order}")


def verify_theorem(spec: TheoremSpec, model: QuiverModel, cut: Optional[Iterable[str]], alpha: Sequence[int],
                   p: int, params: Mapping[str, int], cap: Optional[int] = None, jobs: int = 1,
                   convention: Optional[LambdaConvention] = None, branch_source: str = "explicit",
                   chunk: Optional[int] = None) -> VerificationReport:
    """Predicted reduced class at L = p against the exhaustive count ratio; exact comparison."""
    p = check_prime(p)
    alpha = model.check_dimension(alpha)
    cut = resolve_cut(model, cut)
    params = reduce_assignment(params, model.params, p)
    q, order = parameter_order(model, spec.family, params, p)
    check_branch(spec.family, spec.branch, order, degree(alpha))

    try:
        predicted_value, predicted = predicted_ratio(spec, model, cut, alpha, p, convention)
    except PoleAtPrime as error:
        raise CoefficientPole(str(error)) from None

    task = CountTask(
        presentation=reduced_presentation(model, cut),
        alpha=alpha,
        p=p,
        params=params,
        cap=cap if cap is not None else config.ORACLE_CAP,
    )
    report = count_representations(task, jobs=jobs, chunk=chunk, order_q=order)
    observed = report.ratio
    passed = predicted == observed
    status = "✅" if passed else "❌"
    logger.info(
        f"{status} {spec.label} alpha={alpha} p={p} q={q}: predicted {render_fraction(predicted)}, "
        f"observed {render_fraction(observed)}"
    )
    return VerificationReport(
        family=spec.family.label,
        branch=spec.branch.label,
        branch_source=branch_source,
        alpha=alpha,
        p=p,
        params=params,
        q=q,
        order_q=order,
        predicted_class=predicted_value.render(),
        predicted=predicted,
        observed=observed,
        representation_count=report.representation_count,
        gl_count=report.gl_count,
        passed=passed,
        elapsed_ms=report.elapsed_ms,
    )


def verify_model(model: QuiverModel, alpha: Sequence[int], p: int, params: Mapping[str, int],
                 branch: str = "auto", family: Optional[str] = None, cut: Optional[Iterable[str]] = None,
                 cap: Optional[int] = None, jobs: int = 1, convention: Optional[LambdaConvention] = None,
                 chunk: Optional[int] = None) -> VerificationReport:
    """verify_theorem with the family read from the model and the branch chosen from q."""
    from dt.engine import family_for_model

    resolved = family_for_model(model, family)
    p = check_prime(p)
    alpha = model.check_dimension(alpha)
    if not any(alpha):
        raise OracleError("The zero dimension vector has nothing to verify")
    reduced = reduce_assignment(params, model.params, p)
    _, order = parameter_order(model, resolved, reduced, p)
    chosen, source = select_branch(resolved, order, degree(alpha), branch)
    if source == "auto":
        logger.info(f"Branch auto-selected: {chosen} (order of q: {order})")
    return verify_theorem(TheoremSpec(resolved, chosen), model, cut, alpha, p, reduced, cap=cap, jobs=jobs,
                          convention=convention, branch_source=source, chunk=chunk)
