import itertools
from fractions import Fraction

import numpy as np
import pytest
import sympy

from dt.strata import Constraint
from dt.theorems import Family, FamilyKind
from oracle.counting import count_representations, decode, decode_slot, determinant_mod, is_nilpotent
from oracle.errors import (
    BranchMismatch,
    CapTooLarge,
    CoefficientPole,
    NonSquareConstraint,
    NotPrime,
    OracleError,
    SearchSpaceTooLarge,
    ZeroParameter,
)
from oracle.factorization import check_factorization, check_q_independence, conifold_block
from oracle.finite_field import coefficient_mod_p, count_gl, multiplicative_order, parse_assignment
from oracle.plan import INDEX_LIMIT, CountTask, StratumConstraint, build_plan, parse_strata
from oracle.pool import split_range
from oracle.verify import select_branch, verify_model
from quivers.corpus import load_corpus
from quivers.potential import reduced_presentation


def task(model, alpha, p, params=None, **kwargs):
    return CountTask(reduced_presentation(model), tuple(alpha), p, params or {}, **kwargs)


class TestFiniteField:
    @pytest.mark.parametrize("q, p, order", [(2, 7, 3), (2, 5, 4), (1, 3, 1), (6, 7, 2), (12, 13, 2)])
    def test_multiplicative_order(self, q, p, order):
        assert multiplicative_order(q, p) == order

    def test_order_of_zero(self):
        with pytest.raises(ZeroParameter):
            multiplicative_order(7, 7)

    def test_not_prime(self):
        with pytest.raises(NotPrime):
            multiplicative_order(2, 9)

    def test_count_gl(self):
        assert count_gl((1,), 3) == 2
        assert count_gl((2,), 3) == 48
        assert count_gl((2,), 7) == 2016
        assert count_gl((1, 1), 3) == 4
        assert count_gl((0, 0), 5) == 1

    def test_coefficient_mod_p(self):
        q = sympy.Symbol("q")
        assert coefficient_mod_p(-q, {"q": 2}, 3) == 1
        assert coefficient_mod_p(1 / (q - 1), {"q": 3}, 5) == 3
        with pytest.raises(CoefficientPole):
            coefficient_mod_p(1 / (q - 1), {"q": 6}, 5)

    def test_parse_assignment(self):
        assert parse_assignment(["q=2", " a = -1 "]) == {"q": 2, "a": -1}
        with pytest.raises(ValueError):
            parse_assignment(["q"])
        with pytest.raises(ValueError):
            parse_assignment(["q=x"])


class TestCounting:
    def test_decode_most_significant_first(self):
        digits = decode(np.array([5, 7]), 3, 3)
        assert digits.tolist() == [[0, 1, 2], [0, 2, 1]]

    def test_arrows_decode_from_their_own_digits(self, conifold):
        plan = build_plan(task(conifold, (2, 1), 3, {"q": 2}))
        indices = np.arange(0, plan.search_space, 97)
        digits = decode(indices, 3, plan.num_entries)
        for slot, s in enumerate(plan.slots):
            expected = digits[:, s.offset:s.offset + s.rows * s.cols].reshape(len(indices), s.rows, s.cols)
            assert np.array_equal(decode_slot(indices, plan, slot), expected)

    def test_determinant_and_nilpotence(self):
        block = np.array([[[0, 1], [0, 0]], [[1, 2], [3, 4]], [[2, 1], [1, 2]]], dtype=np.int64)
        assert determinant_mod(block, 5).tolist() == [0, 3, 3]
        assert is_nilpotent(block, 5).tolist() == [True, False, False]

    def test_quantum_degree_one(self, quantum):
        report = count_representations(task(quantum, (1,), 3, {"q": 2}))
        assert (report.representation_count, report.gl_count) == (5, 2)
        assert report.ratio == Fraction(5, 2)
        assert report.search_space == 9

    def test_jordan_degree_one(self, jordan):
        report = count_representations(task(jordan, (1,), 5))
        assert report.ratio == Fraction(5, 4)

    def test_conifold_degree_one(self, conifold):
        assert count_representations(task(conifold, (1, 1), 3, {"q": 2})).representation_count == 19
        empty = count_representations(task(conifold, (1, 0), 3, {"q": 2}))
        assert (empty.representation_count, empty.search_space) == (1, 1)

    @pytest.mark.parametrize("text, count", [("x:I,y:I", 0), ("x:I,y:N", 2), ("x:N,y:I", 2), ("x:N,y:N", 1)])
    def test_quantum_strata(self, quantum, text, count):
        report = count_representations(task(quantum, (1,), 3, {"q": 2}, strata=parse_strata(text)))
        assert report.representation_count == count

    def test_stratum_labels(self, quantum):
        report = count_representations(task(quantum, (1,), 3, {"q": 2}, strata=parse_strata("x:N,y:any")))
        assert report.strata == "x:N,y:*"
        assert report.representation_count == 3

    @pytest.mark.parametrize(
        "p, alpha", [(3, (1,)), (3, (2,)), (5, (1,)), pytest.param(5, (2,), marks=pytest.mark.slow)]
    )
    def test_swapping_the_loops_inverts_q(self, quantum, p, alpha):
        for q in range(2, p):
            inverse = pow(q, -1, p)
            counted = count_representations(task(quantum, alpha, p, {"q": q})).representation_count
            assert counted == count_representations(task(quantum, alpha, p, {"q": inverse})).representation_count

    @pytest.mark.parametrize("p, alpha", [(3, (1,)), (3, (2,)), (5, (1,))])
    @pytest.mark.parametrize("x, y", [("N", "I"), ("N", "N"), ("I", "I")])
    def test_swapping_the_loops_swaps_strata(self, quantum, p, alpha, x, y):
        for q in range(2, p):
            inverse = pow(q, -1, p)
            here = task(quantum, alpha, p, {"q": q}, strata=parse_strata(f"x:{x},y:{y}"))
            there = task(quantum, alpha, p, {"q": inverse}, strata=parse_strata(f"x:{y},y:{x}"))
            assert count_representations(here).representation_count == count_representations(there).representation_count

    def test_counts_agree_across_jobs_and_chunks(self, jordan):
        single = count_representations(task(jordan, (2,), 3), jobs=1)
        parallel = count_representations(task(jordan, (2,), 3), jobs=2, chunk=100)
        small = count_representations(task(jordan, (2,), 3), jobs=1, chunk=37)
        assert single.representation_count == parallel.representation_count == small.representation_count == 153

    def test_split_range_covers_everything(self):
        slices = split_range(10, 4)
        assert slices == [(0, 3), (3, 6), (6, 8), (8, 10)]
        assert split_range(2, 8) == [(0, 1), (1, 2)]

    def test_report_without_timings(self, quantum):
        report = count_representations(task(quantum, (1,), 3, {"q": 2}))
        assert "elapsed_ms" in report.to_dict()
        assert "elapsed_ms" not in report.to_dict(timings=False)


class TestPlanErrors:
    def test_search_space_cap(self, quantum):
        with pytest.raises(SearchSpaceTooLarge) as info:
            build_plan(task(quantum, (2,), 7, {"q": 2}, cap=1000))
        assert info.value.size == 7 ** 8

    def test_cap_beyond_the_index_range(self, quantum):
        with pytest.raises(CapTooLarge):
            build_plan(task(quantum, (1,), 3, {"q": 2}, cap=INDEX_LIMIT))
        assert build_plan(task(quantum, (1,), 3, {"q": 2}, cap=INDEX_LIMIT - 1)).search_space == 9

    def test_zero_parameter(self, quantum):
        with pytest.raises(ZeroParameter):
            task(quantum, (1,), 3, {"q": 3})

    def test_missing_parameter(self, quantum):
        with pytest.raises(ZeroParameter):
            task(quantum, (1,), 3, {})

    def test_non_square_constraint(self, conifold):
        with pytest.raises(NonSquareConstraint):
            build_plan(task(conifold, (1, 1), 3, {"q": 2}, strata=(StratumConstraint(("a2",), Constraint.NILPOTENT),)))

    def test_parse_strata_rejects(self):
        with pytest.raises(ValueError):
            parse_strata("x")
        with pytest.raises(ValueError):
            parse_strata("x+:N")

    def test_parse_strata(self):
        assert parse_strata("a2+b2:invertible") == (StratumConstraint(("a2", "b2"), Constraint.INVERTIBLE),)
        assert parse_strata("") == ()


class TestBranchSelection:
    def test_auto(self):
        quantum = Family(FamilyKind.QUANTUM_C3)
        assert select_branch(quantum, 2, 1)[0].is_generic
        branch, source = select_branch(quantum, 2, 2)
        assert (branch.order, source) == (2, "auto")

    def test_explicit(self):
        branch, source = select_branch(Family(FamilyKind.CONIFOLD), 2, 4, "root:2")
        assert (branch.label, source) == ("root:2", "explicit")

    def test_mismatches(self):
        quantum = Family(FamilyKind.QUANTUM_C3)
        with pytest.raises(BranchMismatch):
            select_branch(quantum, 2, 2, "generic")
        with pytest.raises(BranchMismatch):
            select_branch(quantum, 2, 2, "root:3")
        with pytest.raises(BranchMismatch):
            select_branch(Family(FamilyKind.JORDAN), None, 1, "root:2")


class TestVerify:
    @pytest.mark.parametrize(
        "name, alpha, p, params, observed",
        [
            ("q1_quantum", (1,), 3, {"q": 2}, Fraction(5, 2)),
            ("q1_quantum", (1,), 3, {"q": 1}, Fraction(9, 2)),
            ("q1_quantum", (1,), 7, {"q": 3}, Fraction(13, 6)),
            ("q1_jordan", (1,), 5, {}, Fraction(5, 4)),
            ("q1_jordan", (2,), 3, {}, Fraction(51, 16)),
            ("conifold", (1, 1), 3, {"q": 2}, Fraction(19, 4)),
            ("conifold", (1, 0), 3, {"q": 2}, Fraction(1, 2)),
            ("conifold", (0, 1), 5, {"q": 2}, Fraction(1, 4)),
            ("cyclic_1", (1, 1), 3, {"q": 2}, Fraction(25, 4)),
            ("cyclic_1", (1, 0), 5, {"q": 2}, Fraction(1, 4)),
        ],
    )
    def test_closed_forms_match_counts(self, name, alpha, p, params, observed):
        report = verify_model(load_corpus(name), alpha, p, params)
        assert report.passed
        assert report.observed == observed
        assert report.predicted == report.observed

    def test_q_equal_one_selects_the_commutative_branch(self, quantum):
        report = verify_model(quantum, (1,), 3, {"q": 1})
        assert (report.branch, report.branch_source) == ("root:1", "auto")
        assert report.order_q == 1

    def test_explicit_generic_at_a_root_is_rejected(self, quantum):
        with pytest.raises(BranchMismatch):
            verify_model(quantum, (2,), 5, {"q": 4}, branch="generic")

    def test_zero_dimension_vector(self, quantum):
        with pytest.raises(OracleError):
            verify_model(quantum, (0,), 3, {"q": 2})

    def test_report_json(self, quantum):
        out = verify_model(quantum, (1,), 3, {"q": 2}).to_dict(timings=False)
        assert out["pass"] is True
        assert out["predicted"] == "5/2"
        assert out["predicted_class"] == "(2*L - 1)/(L - 1)"
        assert "elapsed_ms" not in out

    @pytest.mark.slow
    @pytest.mark.parametrize(
        "name, alpha, p, params, branch",
        [
            ("q1_quantum", (2,), 7, {"q": 2}, "generic"),
            ("q1_quantum", (2,), 5, {"q": 4}, "root:2"),
            ("q1_quantum", (2,), 3, {"q": 1}, "root:1"),
            ("conifold", (2, 1), 3, {"q": 2}, "generic"),
            ("conifold", (2, 2), 3, {"q": 2}, "root:2"),
        ],
    )
    def test_larger_dimension_vectors(self, name, alpha, p, params, branch):
        report = verify_model(load_corpus(name), alpha, p, params, branch=branch, jobs=0)
        assert report.passed

    @pytest.mark.slow
    def test_quantum_degree_two_count(self, quantum):
        report = verify_model(quantum, (2,), 7, {"q": 2}, jobs=0)
        assert (report.representation_count, report.gl_count) == (11137, 2016)

    @pytest.mark.parametrize("n", [1, 2])
    def test_cyclic_families_up_to_degree_three(self, n):
        model = load_corpus(f"cyclic_{n}")
        vectors = [alpha for alpha in itertools.product(range(4), repeat=n + 1) if 1 <= sum(alpha) <= 3]
        for alpha in vectors:
            report = verify_model(model, alpha, 3, {"q": 2})
            assert report.passed, alpha

    def test_commutative_branch_at_five(self, quantum):
        report = verify_model(quantum, (1,), 5, {"q": 1})
        assert (report.branch, report.observed) == ("root:1", Fraction(25, 4))
        assert report.passed

    @pytest.mark.slow
    @pytest.mark.parametrize(
        "name, alpha, p, params",
        [
            ("q1_jordan", (2,), 5, {}),
            ("q1_quantum", (2,), 5, {"q": 1}),
        ],
    )
    def test_degree_two_at_five(self, name, alpha, p, params):
        assert verify_model(load_corpus(name), alpha, p, params, jobs=0).passed


class TestFactorization:
    def test_quantum_strata_multiply(self, quantum):
        report = check_factorization(quantum, None, 3, {"q": 2}, truncation=2)
        assert report.product_matches
        assert all(stratum.closed_form_matches for stratum in report.strata)
        assert [s.label for s in report.strata] == ["x:I,y:I", "x:I,y:N", "x:N,y:I", "x:N,y:N"]
        assert report.passed

    def test_quantum_at_q_equal_one(self, quantum):
        assert check_factorization(quantum, None, 3, {"q": 1}, truncation=2).passed

    def test_conifold_block(self, conifold):
        assert conifold_block(reduced_presentation(conifold)) == ("a2", "b2")

    def test_conifold_strata_multiply(self, conifold):
        report = check_factorization(conifold, None, 3, {"q": 2}, truncation=2)
        assert report.product_matches
        assert [s.label for s in report.strata] == ["a2+b2:N", "a2+b2:I"]

    def test_jordan_has_no_stratification(self, jordan):
        with pytest.raises(ValueError):
            check_factorization(jordan, None, 3, {}, truncation=1)

    def test_nilpotent_strata_are_independent_of_q(self, quantum):
        report = check_q_independence(quantum, None, 3, truncation=2)
        assert report.passed
        assert set(report.counts) == {"x:I,y:N", "x:N,y:I", "x:N,y:N"}
        assert report.counts["x:N,y:N"][(1,)] == [1, 1]

    @pytest.mark.slow
    @pytest.mark.parametrize("q", [1, 2, 3, 4])
    @pytest.mark.parametrize("name", ["q1_quantum", "conifold"])
    def test_factorization_at_five_for_every_q(self, name, q):
        report = check_factorization(load_corpus(name), None, 5, {"q": q}, truncation=2, jobs=0)
        assert report.product_matches
        assert report.passed

    @pytest.mark.slow
    def test_q_independence_at_five(self, quantum):
        assert check_q_independence(quantum, None, 5, truncation=2, jobs=0).passed
