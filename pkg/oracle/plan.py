"""
Count tasks and their compiled, picklable plans.

A plan fixes the enumeration layout: each non-cut arrow a: i -> j owns a block of
alpha_j * alpha_i consecutive digits (row-major M_a), arrows in model order, and the
first arrow's entries are the most significant digits of the assignment index.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, Mapping, Tuple

import numpy as np

import config
from dt.strata import Constraint
from oracle.errors import CapTooLarge, NonSquareConstraint, SearchSpaceTooLarge
from oracle.finite_field import check_prime, coefficient_mod_p, count_gl, reduce_assignment
from quivers.errors import UnknownArrow
from quivers.potential import ReducedPresentation

logger = logging.getLogger(__name__)

# assignment indices are int64
INDEX_LIMIT = int(np.iinfo(np.int64).max)


@dataclass(frozen=True)
class StratumConstraint:
    """Constraint on the endomorphism formed by a group of arrows (a block matrix)."""

    arrows: Tuple[str, ...]
    constraint: Constraint

    @property
    def label(self) -> str:
        return f"{'+'.join(self.arrows)}:{self.constraint.value}"


Stratum = Tuple[StratumConstraint, ...]


def stratum_label(stratum: Stratum) -> str:
    return ",".join(c.label for c in stratum) or "all"


def parse_strata(text: str) -> Stratum:
    """`x:N,y:invertible` or `a2+b2:N`; an empty string means no constraint."""
    out = []
    for item in filter(None, (part.strip() for part in text.split(","))):
        arrows, sep, constraint = item.rpartition(":")
        if not sep or not arrows:
            raise ValueError(f"Stratum constraint must look like arrow:N, got {item!r}")
        names = tuple(name.strip() for name in arrows.split("+"))
        if not all(names):
            raise ValueError(f"Empty arrow name in stratum constraint {item!r}")
        out.append(StratumConstraint(names, Constraint.parse(constraint)))
    return tuple(out)


@dataclass(frozen=True)
class CountTask:
    presentation: ReducedPresentation
    alpha: Tuple[int, ...]
    p: int
    params: Mapping[str, int] = field(default_factory=dict)
    cap: int = config.ORACLE_CAP
    strata: Stratum = ()

    def __post_init__(self):
        object.__setattr__(self, "alpha", self.presentation.quiver.check_dimension(self.alpha))
        object.__setattr__(self, "p", check_prime(self.p))
        object.__setattr__(
            self, "params", reduce_assignment(self.params, self.presentation.quiver.params, self.p)
        )
        object.__setattr__(self, "strata", tuple(self.strata))

    @property
    def num_entries(self) -> int:
        quiver = self.presentation.quiver
        return sum(
            self.alpha[quiver.vertex_index(a.source)] * self.alpha[quiver.vertex_index(a.target)]
            for a in quiver.arrows
        )

    @property
    def search_space(self) -> int:
        return self.p ** self.num_entries


@dataclass(frozen=True)
class ArrowSlot:
    name: str
    source: int
    target: int
    rows: int
    cols: int
    offset: int


@dataclass(frozen=True)
class CompiledRelation:
    """sum of coefficient * M_word, a rows x cols matrix; words hold slot indices."""

    rows: int
    cols: int
    terms: Tuple[Tuple[int, Tuple[int, ...]], ...]
    last_slot: int


@dataclass(frozen=True)
class CompiledConstraint:
    size: int
    # (slot index, row offset, col offset) placements inside the block matrix
    placements: Tuple[Tuple[int, int, int], ...]
    constraint: Constraint


@dataclass(frozen=True)
class CountPlan:
    p: int
    alpha: Tuple[int, ...]
    slots: Tuple[ArrowSlot, ...]
    relations: Tuple[CompiledRelation, ...]
    constraints: Tuple[CompiledConstraint, ...]
    num_entries: int

    @property
    def search_space(self) -> int:
        return self.p ** self.num_entries


def _compile_constraint(task: CountTask, slots: Dict[str, int], stratum: StratumConstraint) -> CompiledConstraint:
    quiver = task.presentation.quiver
    arrows = []
    for name in stratum.arrows:
        if name not in slots:
            raise UnknownArrow(f"Stratum names {name!r}, which is not an arrow of the cut quiver")
        arrows.append(quiver.arrow(name))
    sources = {a.source for a in arrows}
    targets = {a.target for a in arrows}
    if sources != targets:
        raise NonSquareConstraint(
            f"Arrows {'+'.join(stratum.arrows)} do not form an endomorphism: "
            f"sources {sorted(sources)}, targets {sorted(targets)}"
        )
    vertices = sorted(sources, key=quiver.vertex_index)
    offsets: Dict[str, int] = {}
    size = 0
    for vertex in vertices:
        offsets[vertex] = size
        size += task.alpha[quiver.vertex_index(vertex)]
    placements = tuple(
        (slots[a.name], offsets[a.target], offsets[a.source]) for a in arrows
    )
    return CompiledConstraint(size, placements, stratum.constraint)


def build_plan(task: CountTask) -> CountPlan:
    """Compile relations (coefficients mod p) and strata; enforce the cap."""
    if task.cap >= INDEX_LIMIT:
        raise CapTooLarge(task.cap, INDEX_LIMIT)
    if task.search_space > task.cap:
        raise SearchSpaceTooLarge(task.search_space, task.cap)
    quiver = task.presentation.quiver
    slots: Dict[str, int] = {}
    plan_slots = []
    offset = 0
    for index, arrow in enumerate(quiver.arrows):
        rows = task.alpha[quiver.vertex_index(arrow.target)]
        cols = task.alpha[quiver.vertex_index(arrow.source)]
        plan_slots.append(ArrowSlot(arrow.name, quiver.vertex_index(arrow.source),
                                    quiver.vertex_index(arrow.target), rows, cols, offset))
        slots[arrow.name] = index
        offset += rows * cols

    relations = []
    for relation in task.presentation.relations:
        rows = task.alpha[quiver.vertex_index(relation.target)]
        cols = task.alpha[quiver.vertex_index(relation.source)]
        terms = []
        for term in relation.terms:
            value = coefficient_mod_p(term.coefficient, task.params, task.p)
            if value:
                terms.append((value, tuple(slots[name] for name in term.word)))
        last = max((s for _, word in terms for s in word), default=-1)
        relations.append(CompiledRelation(rows, cols, tuple(terms), last))
    # relations reading only early slots first, so later slots decode for fewer rows
    relations.sort(key=lambda r: r.last_slot)

    constraints = tuple(_compile_constraint(task, slots, s) for s in task.strata)
    plan = CountPlan(task.p, task.alpha, tuple(plan_slots), tuple(relations), constraints, offset)
    logger.debug(
        f"Plan for alpha={task.alpha} over F_{task.p}: {offset} entries, "
        f"{len(relations)} relation(s), {len(constraints)} constraint(s), {plan.search_space} assignments"
    )
    return plan


def gl_order(task: CountTask) -> int:
    return count_gl(task.alpha, task.p)
