"""
Finite-field oracle

Exhaustive counts of cut representation varieties and of G_alpha over F_p, stratified counts,
and the checks that compare them with the closed forms.
"""

from oracle.counting import OracleReport, count_representations, stratified_count
from oracle.factorization import (
    FactorizationReport,
    QIndependenceReport,
    check_factorization,
    check_q_independence,
    stratified_series,
)
from oracle.finite_field import check_prime, count_gl, multiplicative_order, parse_assignment
from oracle.plan import CountTask, StratumConstraint, build_plan
from oracle.verify import VerificationReport, select_branch, verify_model, verify_theorem

__all__ = [
    "OracleReport",
    "count_representations",
    "stratified_count",
    "FactorizationReport",
    "QIndependenceReport",
    "check_factorization",
    "check_q_independence",
    "stratified_series",
    "check_prime",
    "count_gl",
    "multiplicative_order",
    "parse_assignment",
    "CountTask",
    "StratumConstraint",
    "build_plan",
    "VerificationReport",
    "select_branch",
    "verify_model",
    "verify_theorem",
]
