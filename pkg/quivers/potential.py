"""
Cyclic derivatives, the Euler-Ringel form, cuts and the reduced (cut) presentation.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from quivers.errors import InvalidCut
from quivers.model import NCPoly, PathTerm, QuiverModel, Word, combine_terms

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class CutCheck:
    valid: bool
    reason: str = ""


@dataclass(frozen=True)
class ReducedPresentation:
    """The quiver Q_I (cut arrows removed, no potential) and the relations dW/da, a in I."""

    quiver: QuiverModel
    relations: Tuple[NCPoly, ...]
    cut: Tuple[str, ...]
    cut_arrows: Tuple[Tuple[str, str, str], ...]

    def to_dict(self) -> dict:
        return {
            "cut": list(self.cut),
            "arrows": [
                {"name": a.name, "source": a.source, "target": a.target} for a in self.quiver.arrows
            ],
            "relations": [relation.to_dict() for relation in self.relations],
        }


def rotations(word: Word) -> List[Word]:
    return [word[i:] + word[:i] for i in range(len(word))]


def cyclic_derivative(model: QuiverModel, arrow: str) -> NCPoly:
    """
    dW/da: for each occurrence of `arrow` in each potential word, rotate the word so the
    occurrence comes first, then drop it. The result runs from t(a) to s(a).
    """
    a = model.arrow(arrow)
    terms: List[PathTerm] = []
    for term in model.potential:
        for index, name in enumerate(term.word):
            if name == arrow:
                rest = term.word[index + 1:] + term.word[:index]
                terms.append(PathTerm(term.coefficient, rest))
    return NCPoly(combine_terms(terms), source=a.target, target=a.source)


def euler_form(model: QuiverModel, alpha: Sequence[int], beta: Sequence[int]) -> int:
    """chi(alpha, beta) = sum_i alpha_i beta_i - sum_a alpha_s(a) beta_t(a)."""
    alpha = model.check_dimension(alpha)
    beta = model.check_dimension(beta)
    value = sum(x * y for x, y in zip(alpha, beta))
    for a in model.arrows:
        value -= alpha[model.vertex_index(a.source)] * beta[model.vertex_index(a.target)]
    return value


def validate_cut(model: QuiverModel, cut: Iterable[str]) -> CutCheck:
    """A cut is valid when every potential word contains exactly one cut arrow, with multiplicity."""
    cut = tuple(cut)
    names = model.arrow_map
    unknown = [name for name in cut if name not in names]
    if unknown:
        return CutCheck(False, f"cut names unknown arrow(s) {', '.join(unknown)}")
    if not model.potential:
        return CutCheck(False, "the model has no potential")
    members = set(cut)
    for term in model.potential:
        hits = sum(1 for name in term.word if name in members)
        if hits != 1:
            return CutCheck(False, f"word {'*'.join(term.word)} has cut degree {hits}, expected 1")
    return CutCheck(True)


def _require_valid(model: QuiverModel, cut: Iterable[str]) -> Tuple[str, ...]:
    cut = tuple(cut)
    check = validate_cut(model, cut)
    if not check.valid:
        raise InvalidCut(f"Invalid cut {{{', '.join(cut)}}}: {check.reason}")
    return cut


def cut_degree(model: QuiverModel, cut: Iterable[str], alpha: Sequence[int]) -> int:
    """d_I(alpha) = sum over cut arrows a: i -> j of alpha_i alpha_j."""
    cut = _require_valid(model, cut)
    alpha = model.check_dimension(alpha)
    total = 0
    for name in cut:
        a = model.arrow(name)
        total += alpha[model.vertex_index(a.source)] * alpha[model.vertex_index(a.target)]
    return total


def resolve_cut(model: QuiverModel, cut: Optional[Iterable[str]] = None) -> Tuple[str, ...]:
    """The explicit cut if one is given, else the model's declared cut."""
    if cut is not None:
        return tuple(cut)
    if model.cut is None:
        raise InvalidCut("The model declares no cut and none was given")
    return model.cut


def reduced_presentation(model: QuiverModel, cut: Optional[Iterable[str]] = None) -> ReducedPresentation:
    cut = _require_valid(model, resolve_cut(model, cut))
    members = set(cut)
    relations = []
    for name in cut:
        relation = cyclic_derivative(model, name)
        stray = members.intersection(relation.arrows())
        if stray:
            # cannot happen for a degree-one cut
            raise InvalidCut(f"Relation d{model.potential_name}/d{name} still contains cut arrow(s) {sorted(stray)}")
        relations.append(relation)
    quiver = QuiverModel(
        vertices=model.vertices,
        arrows=tuple(a for a in model.arrows if a.name not in members),
        params=model.params,
        potential=(),
        potential_name=model.potential_name,
        family=model.family,
    )
    logger.debug(f"Reduced {len(model.arrows)} arrows to {len(quiver.arrows)} with {len(relations)} relation(s)")
    return ReducedPresentation(
        quiver=quiver,
        relations=tuple(relations),
        cut=cut,
        cut_arrows=tuple((model.arrow(n).name, model.arrow(n).source, model.arrow(n).target) for n in cut),
    )
