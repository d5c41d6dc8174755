from fractions import Fraction

import pytest

from dt.engine import (
    dimred_exponent,
    euler_numerators,
    family_for_model,
    predicted_ratio,
    reduced_class,
    reduced_classes,
    theorem_series,
)
from dt.errors import TheoremError, UnsupportedBranch
from dt.strata import QUANTUM_STRATA, Constraint, stratum_series
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
from motive.scalar import L, MotivicScalar, specialize_at_prime
from motive.series import ClosedFormTerm, MSeries, expand_closed_form, plethystic_exp
from quivers.corpus import load_corpus

QUANTUM = Family(FamilyKind.QUANTUM_C3)
JORDAN = Family(FamilyKind.JORDAN)
CONIFOLD = Family(FamilyKind.CONIFOLD)


def ratio(spec, model, alpha, p):
    return predicted_ratio(spec, model, None, alpha, p)[1]


class TestFamilies:
    @pytest.mark.parametrize(
        "text, family",
        [
            ("quantum_c3", QUANTUM),
            ("jordan", JORDAN),
            ("conifold", CONIFOLD),
            ("cyclic(2)", Family(FamilyKind.CYCLIC, 2)),
            ("cyclic:3", Family(FamilyKind.CYCLIC, 3)),
        ],
    )
    def test_parse(self, text, family):
        assert Family.parse(text) == family

    @pytest.mark.parametrize("text", ["cyclic", "sklyanin", "cyclic(0)", ""])
    def test_parse_rejects(self, text):
        with pytest.raises(TheoremError):
            Family.parse(text)

    def test_labels_round_trip(self):
        for family in (QUANTUM, JORDAN, CONIFOLD, Family(FamilyKind.CYCLIC, 4)):
            assert Family.parse(family.label) == family

    def test_branch_parse(self):
        assert Branch.parse("generic").is_generic
        assert Branch.parse("root:3").order == 3
        with pytest.raises(UnsupportedBranch):
            Branch.parse("root:x")
        with pytest.raises(UnsupportedBranch):
            Branch.parse("root:0")

    def test_jordan_has_only_the_generic_branch(self):
        with pytest.raises(UnsupportedBranch):
            TheoremSpec(JORDAN, Branch.root(2))

    def test_family_for_model_checks_vertices(self, quantum):
        assert family_for_model(quantum) == QUANTUM
        with pytest.raises(TheoremError):
            family_for_model(quantum, "conifold")

    def test_family_for_model_needs_a_family(self):
        with pytest.raises(TheoremError):
            family_for_model(load_corpus("q1_weyl"))

    def test_cyclic_roots(self):
        assert cyclic_roots(1) == [(0, 1), (1, 0)]
        roots = cyclic_roots(2)
        assert len(roots) == 6
        assert (1, 0, 1) in roots
        assert (1, 1, 1) not in roots


class TestGenericValidity:
    def test_quantum(self):
        assert generic_is_valid(QUANTUM, 2, 1)
        assert not generic_is_valid(QUANTUM, 2, 2)

    def test_conifold_correction_starts_in_degree_2r(self):
        assert generic_is_valid(CONIFOLD, 2, 3)
        assert not generic_is_valid(CONIFOLD, 2, 4)

    def test_cyclic(self):
        assert generic_is_valid(Family(FamilyKind.CYCLIC, 2), 1, 2)
        assert not generic_is_valid(Family(FamilyKind.CYCLIC, 2), 1, 3)

    def test_jordan_is_always_generic(self):
        assert generic_is_valid(JORDAN, 1, 10)

    def test_correction_degree(self):
        assert TheoremSpec(CONIFOLD, Branch.root(3)).correction_degree == 6
        assert TheoremSpec(CONIFOLD).correction_degree is None


class TestSeries:
    def test_truncation_must_be_positive(self):
        with pytest.raises(TheoremError):
            theorem_series(TheoremSpec(QUANTUM), 0)

    def test_quantum_first_coefficient(self):
        series = theorem_series(TheoremSpec(QUANTUM), 1)
        assert series.coefficient((1,)) == (2 * L - 1) / (L - 1)

    def test_commutative_limit(self):
        n = 4
        expected = plethystic_exp(expand_closed_form([ClosedFormTerm(L ** 2 / (L - 1), (1,), (1,))], n))
        assert theorem_series(commutative_spec(QUANTUM), n) == expected

    def test_commutative_terms_merge(self):
        terms = commutative_terms(QUANTUM)
        assert len(terms) == 1
        assert terms[0].motive == L ** 2 / (L - 1)

    def test_strata_multiply_to_quantum(self):
        n = 4
        for order in (None, 1, 2, 3):
            product = MSeries.one(1, n)
            for a, b in QUANTUM_STRATA:
                product = product * stratum_series(a, b, n, order)
            branch = Branch(order)
            assert product == theorem_series(TheoremSpec(QUANTUM, branch), n)

    def test_invertible_stratum_is_trivial_for_generic_q(self):
        series = stratum_series(Constraint.INVERTIBLE, Constraint.INVERTIBLE, 3)
        assert series == MSeries.one(1, 3)

    def test_any_constraint_has_no_closed_form(self):
        with pytest.raises(TheoremError):
            stratum_series(Constraint.ANY, Constraint.NILPOTENT, 2)

    def test_euler_numerators(self):
        rows = euler_numerators(TheoremSpec(CONIFOLD))
        assert rows[0]["euler"] == "-2"
        assert euler_numerators(TheoremSpec(QUANTUM))[0]["euler"] == "-1"


class TestReducedClasses:
    def test_quantum_degree_one(self, quantum):
        assert ratio(TheoremSpec(QUANTUM), quantum, (1,), 3) == Fraction(5, 2)

    def test_quantum_at_q_equal_one(self, quantum):
        value, at_three = predicted_ratio(commutative_spec(QUANTUM), quantum, None, (1,), 3)
        assert value == L ** 2 / (L - 1)
        assert at_three == Fraction(9, 2)

    def test_quantum_degree_two(self, quantum):
        assert ratio(TheoremSpec(QUANTUM), quantum, (2,), 7) == Fraction(1591, 288)

    def test_jordan(self, jordan):
        assert ratio(TheoremSpec(JORDAN), jordan, (1,), 5) == Fraction(5, 4)
        assert ratio(TheoremSpec(JORDAN), jordan, (2,), 3) == Fraction(51, 16)

    def test_conifold(self, conifold):
        spec = TheoremSpec(CONIFOLD)
        value, at_three = predicted_ratio(spec, conifold, None, (1, 1), 3)
        assert value == (3 * L ** 2 - 3 * L + 1) / (L - 1) ** 2
        assert at_three == Fraction(19, 4)
        assert ratio(spec, conifold, (1, 0), 3) == Fraction(1, 2)
        assert ratio(spec, conifold, (0, 1), 5) == Fraction(1, 4)

    def test_conifold_closed_form_in_p(self, conifold):
        spec = TheoremSpec(CONIFOLD)
        for p in (3, 5, 7):
            assert ratio(spec, conifold, (1, 1), p) == Fraction(3 * p * p - 3 * p + 1, (p - 1) ** 2)

    def test_cyclic_one(self):
        model = load_corpus("cyclic_1")
        spec = TheoremSpec(Family(FamilyKind.CYCLIC, 1))
        assert ratio(spec, model, (1, 1), 3) == Fraction(25, 4)
        for p in (3, 5):
            assert ratio(spec, model, (1, 0), p) == Fraction(1, p - 1)

    def test_dimred_exponent(self, quantum, conifold):
        assert dimred_exponent(quantum, None, (2,)) == 0
        assert dimred_exponent(conifold, None, (1, 0)) == 1

    def test_reduced_classes_cover_every_degree(self, conifold):
        classes = reduced_classes(TheoremSpec(CONIFOLD), conifold, None, 2)
        assert set(classes) == {(1, 0), (0, 1), (2, 0), (1, 1), (0, 2)}
        assert all(isinstance(value, MotivicScalar) for value in classes.values())

    def test_reduced_class_beyond_truncation(self, quantum):
        series = theorem_series(TheoremSpec(QUANTUM), 1)
        with pytest.raises(TheoremError):
            reduced_class(series, quantum, None, (2,))

    def test_values_are_functions_of_l(self, conifold):
        spec = TheoremSpec(CONIFOLD, Branch.root(2))
        for alpha, value in reduced_classes(spec, conifold, None, 3).items():
            assert value.is_even
            specialize_at_prime(value, 5)


class TestSeriesInvariants:
    @pytest.mark.parametrize("branch", [Branch(), Branch.root(1), Branch.root(2)])
    def test_conifold_is_symmetric_in_the_vertices(self, branch):
        series = theorem_series(TheoremSpec(CONIFOLD, branch), 4)
        for (a, b), value in series.items():
            assert series.coefficient((b, a)) == value

    @pytest.mark.parametrize("n", [1, 2])
    def test_cyclic_is_invariant_under_rotating_vertices(self, n):
        series = theorem_series(TheoremSpec(Family(FamilyKind.CYCLIC, n)), 3)
        for alpha, value in series.items():
            assert series.coefficient(alpha[1:] + alpha[:1]) == value

    @pytest.mark.parametrize(
        "family, order",
        [
            (QUANTUM, 1),
            (QUANTUM, 2),
            (QUANTUM, 3),
            (CONIFOLD, 1),
            (CONIFOLD, 2),
            (Family(FamilyKind.CYCLIC, 1), 1),
            (Family(FamilyKind.CYCLIC, 1), 2),
            (Family(FamilyKind.CYCLIC, 2), 1),
        ],
    )
    def test_root_correction_starts_at_order_times_support(self, family, order):
        root = TheoremSpec(family, Branch.root(order))
        start = root.correction_degree
        generic = theorem_series(TheoremSpec(family), start)
        corrected = theorem_series(root, start)
        for alpha, value in generic.items():
            if sum(alpha) < start:
                assert corrected.coefficient(alpha) == value
                assert generic_is_valid(family, order, sum(alpha))
        first = tuple(order * x for x in (1,) * root.num_vars)
        assert corrected.coefficient(first) - generic.coefficient(first) == L - 1
        assert not generic_is_valid(family, order, start)
