"""
Exhaustive counting over F_p in numpy batches.

A batch is a contiguous range of assignment indices. Relations are applied one at a time,
keeping only the surviving rows, and an arrow's matrices are decoded from the index only when a
relation first reads them, so rows rejected early never decode the later arrows.
A word a1*a2*...*ak is the product M_ak ... M_a2 M_a1.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np

from dt.strata import Constraint
from oracle.plan import CompiledConstraint, CompiledRelation, CountPlan, CountTask, build_plan, gl_order, stratum_label

logger = logging.getLogger(__name__)

DTYPE = np.int64


@dataclass
class OracleReport:
    representation_count: int
    gl_count: int
    p: int
    alpha: Tuple[int, ...]
    params: Dict[str, int] = field(default_factory=dict)
    order_q: Optional[int] = None
    strata: str = "all"
    search_space: int = 0
    elapsed_ms: Optional[float] = None

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.representation_count, self.gl_count)

    def to_dict(self, timings: bool = True) -> dict:
        ratio = self.ratio
        out = {
            "alpha": list(self.alpha),
            "p": self.p,
            "params": dict(sorted(self.params.items())),
            "order_q": self.order_q,
            "strata": self.strata,
            "representation_count": self.representation_count,
            "gl_count": self.gl_count,
            "ratio": f"{ratio.numerator}/{ratio.denominator}",
            "search_space": self.search_space,
        }
        if timings and self.elapsed_ms is not None:
            out["elapsed_ms"] = round(self.elapsed_ms, 3)
        return out


def decode(indices: np.ndarray, p: int, num_entries: int) -> np.ndarray:
    """Base-p digits, most significant first: shape (len(indices), num_entries)."""
    digits = np.empty((len(indices), num_entries), dtype=DTYPE)
    rest = indices.astype(DTYPE, copy=True)
    for position in range(num_entries - 1, -1, -1):
        digits[:, position] = rest % p
        rest //= p
    return digits


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return np.matmul(a, b) % p


def _word_product(matrices: List[np.ndarray], word: Tuple[int, ...], size: int, count: int, p: int) -> np.ndarray:
    if not word:
        return np.broadcast_to(np.eye(size, dtype=DTYPE), (count, size, size))
    product = matrices[word[0]]
    for slot in word[1:]:
        product = matmul_mod(matrices[slot], product, p)
    return product


def evaluate_relation(relation: CompiledRelation, matrices: List[np.ndarray], count: int, p: int) -> np.ndarray:
    """Boolean mask of rows where the relation vanishes."""
    total = np.zeros((count, relation.rows, relation.cols), dtype=DTYPE)
    for coefficient, word in relation.terms:
        total = (total + coefficient * _word_product(matrices, word, relation.rows, count, p)) % p
    return ~total.reshape(count, -1).any(axis=1)


def block_matrix(constraint: CompiledConstraint, matrices: List[np.ndarray], count: int, p: int) -> np.ndarray:
    block = np.zeros((count, constraint.size, constraint.size), dtype=DTYPE)
    for slot, row, col in constraint.placements:
        m = matrices[slot]
        block[:, row:row + m.shape[1], col:col + m.shape[2]] += m
    return block % p


def is_nilpotent(block: np.ndarray, p: int) -> np.ndarray:
    """M^s = 0 with s the block size."""
    count, size = block.shape[0], block.shape[1]
    if size == 0:
        return np.ones(count, dtype=bool)
    power = block
    for _ in range(size - 1):
        power = matmul_mod(power, block, p)
    return ~power.reshape(count, -1).any(axis=1)


def _permutation_sign(permutation: Tuple[int, ...]) -> int:
    inversions = sum(1 for i, j in itertools.combinations(range(len(permutation)), 2)
                     if permutation[i] > permutation[j])
    return -1 if inversions % 2 else 1


def determinant_mod(block: np.ndarray, p: int) -> np.ndarray:
    """Leibniz expansion mod p, batched over the first axis."""
    count, size = block.shape[0], block.shape[1]
    det = np.zeros(count, dtype=DTYPE)
    if size == 0:
        return np.ones(count, dtype=DTYPE)
    rows = np.arange(size)
    for permutation in itertools.permutations(range(size)):
        term = np.ones(count, dtype=DTYPE)
        for row, col in zip(rows, permutation):
            term = term * block[:, row, col] % p
        det = (det + _permutation_sign(permutation) * term) % p
    return det


def satisfies(constraint: CompiledConstraint, matrices: List[np.ndarray], count: int, p: int) -> np.ndarray:
    if constraint.constraint is Constraint.ANY:
        return np.ones(count, dtype=bool)
    block = block_matrix(constraint, matrices, count, p)
    if constraint.constraint is Constraint.NILPOTENT:
        return is_nilpotent(block, p)
    return determinant_mod(block, p) != 0


def decode_slot(indices: np.ndarray, plan: CountPlan, slot: int) -> np.ndarray:
    """The matrices of one arrow, read straight from the assignment indices."""
    s = plan.slots[slot]
    size = s.rows * s.cols
    shift = plan.num_entries - s.offset - size
    block = (indices // plan.p ** shift) % plan.p ** size
    return decode(block, plan.p, size).reshape(len(indices), s.rows, s.cols)


def count_batch(plan: CountPlan, start: int, stop: int) -> int:
    """Satisfying assignments with index in [start, stop)."""
    p = plan.p
    indices = np.arange(start, stop, dtype=DTYPE)
    matrices: List[Optional[np.ndarray]] = [None] * len(plan.slots)

    def keep(mask: np.ndarray) -> None:
        nonlocal indices
        indices = indices[mask]
        for slot, m in enumerate(matrices):
            if m is not None:
                matrices[slot] = m[mask]

    def decoded(slots) -> None:
        for slot in slots:
            if matrices[slot] is None:
                matrices[slot] = decode_slot(indices, plan, slot)

    for relation in plan.relations:
        decoded(sorted({slot for _, word in relation.terms for slot in word}))
        mask = evaluate_relation(relation, matrices, len(indices), p)
        if not mask.all():
            keep(mask)
        if len(indices) == 0:
            return 0
    decoded(range(len(plan.slots)))
    for constraint in plan.constraints:
        mask = satisfies(constraint, matrices, len(indices), p)
        if not mask.all():
            keep(mask)
        if len(indices) == 0:
            return 0
    return len(indices)


def count_slice(plan: CountPlan, start: int, stop: int, chunk: int) -> int:
    """One worker's share: [start, stop) in batches of at most `chunk` assignments."""
    total = 0
    for low in range(start, stop, chunk):
        total += count_batch(plan, low, min(low + chunk, stop))
    return total


def count_representations(task: CountTask, jobs: int = 1, chunk: Optional[int] = None,
                          order_q: Optional[int] = None) -> OracleReport:
    """
    Exact count of the assignments satisfying every relation (and the task's strata),
    with |G_alpha| and their ratio.
    """
    from oracle.pool import run_plan

    plan = build_plan(task)
    count, elapsed_ms = run_plan(plan, jobs=jobs, chunk=chunk)
    report = OracleReport(
        representation_count=count,
        gl_count=gl_order(task),
        p=task.p,
        alpha=task.alpha,
        params=dict(task.params),
        order_q=order_q,
        strata=stratum_label(task.strata),
        search_space=plan.search_space,
        elapsed_ms=elapsed_ms,
    )
    logger.debug(f"alpha={task.alpha} p={task.p} strata={report.strata}: {count} of {plan.search_space}")
    return report


def stratified_count(task: CountTask, jobs: int = 1, chunk: Optional[int] = None,
                     order_q: Optional[int] = None) -> OracleReport:
    """count_representations restricted to the task's strata (Nilpotent, Invertible or Any per arrow group)."""
    return count_representations(task, jobs=jobs, chunk=chunk, order_q=order_q)
