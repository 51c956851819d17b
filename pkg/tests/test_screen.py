from fractions import Fraction

import pytest

from algebra.support_geometry import Direction, extract_fP, is_aligned, st_en
from algebra.unipoly import distinct_factor_count
from algebra.weyl_core import X, Y, WeylElement, apply_phi, normal_mul
from screening.analysis import (
    Decomposition,
    classify_case,
    covering_rows,
    decompose_leading_power,
    find_F,
    mass_bound_report,
    reduce_by_tau,
    reduce_upper_edge,
    solve_leading_power,
)
from screening.nodes import bound_node, check_necessary_node, classify_node
from screening.screen_agent import check_pair
from screening.states import initial_state
from shared.models.schemas import CaseLabel, Verdict
from shared.utils.errors import PreconditionError
from shared.utils.text_io import parse_element

DIAG = Direction(1, 1)


class TestClassifyCase:
    def test_monomial_leading_term(self):
        assert classify_case(parse_element("X^2*Y^3 + X")).label == CaseLabel.CASE_1A

    def test_square_of_a_linear_form(self):
        P = parse_element("(X+Y)^2 + 1")
        result = classify_case(P)
        assert result.label == CaseLabel.CASE_2A
        # predicates evaluated independently of classify_case
        _, _, f = extract_fP(P, DIAG)
        st, en = st_en(P, DIAG)
        assert distinct_factor_count(f) == 1
        assert is_aligned(st, (2, 0)) and is_aligned(en, (0, 2))

    def test_one_factor_aligned_at_start_only(self):
        P = parse_element("X^2 + X*Y")
        assert classify_case(P).label == CaseLabel.CASE_2B
        st, en = st_en(P, DIAG)
        assert (st, en) == ((2, 0), (1, 1))

    def test_axis_monomials(self):
        assert classify_case(Y ** 3).label == CaseLabel.CASE_1B
        assert classify_case(X ** 3).label == CaseLabel.CASE_1C

    def test_excluded_inputs_carry_a_reason(self):
        result = classify_case(X ** 3 + Y ** 3)
        assert result.label == CaseLabel.EXCLUDED
        assert result.reason == "#factors(f_P) > 2"
        constant = classify_case(WeylElement.constant(3))
        assert constant.label == CaseLabel.EXCLUDED
        assert constant.reason == "v_{1,1}(P) <= 0"

    def test_witnesses(self):
        names = [w.name for w in classify_case(parse_element("X^2 + X*Y")).witnesses]
        assert "f_P" in names
        assert "st_{1,1}(P)" in names

    def test_zero_is_refused(self):
        with pytest.raises(PreconditionError):
            classify_case(WeylElement.zero())

    def test_tau_reduction(self):
        P = parse_element("X^2 + X*Y")
        image = reduce_by_tau(P, classify_case(P))
        assert image.label == CaseLabel.CASE_2C
        assert reduce_by_tau(X ** 3, classify_case(X ** 3)).label == CaseLabel.CASE_1B
        assert reduce_by_tau(Y ** 3, classify_case(Y ** 3)) is None

    def test_covering_rows(self):
        assert covering_rows(CaseLabel.CASE_1A) == [1]
        assert covering_rows(CaseLabel.CASE_2B) == [5, 6]
        assert covering_rows(CaseLabel.CASE_3) == [7]
        assert covering_rows(CaseLabel.EXCLUDED) == []


class TestMassBoundReport:
    def test_subrectangular_row(self):
        report = mass_bound_report(parse_element("X^2*Y^3 + X + Y^3"))
        assert (report.row, report.implied_bound) == (1, 5)
        assert report.predicates["v_{1,-1}(en_{1,0}(P))"] == -1

    def test_y_power_row(self):
        report = mass_bound_report(parse_element("Y^3 + X^2"))
        assert (report.row, report.implied_bound) == (3, 10)

    def test_proper_power_row(self):
        report = mass_bound_report(parse_element("(X+Y)^2"))
        assert (report.row, report.implied_bound) == (4, 17)
        assert report.rationale == "row 4 applies: m(P) > 16"

    def test_no_row(self):
        report = mass_bound_report(X + Y)
        assert report.implied_bound is None
        assert report.row is None


class TestDecomposeLeadingPower:
    def test_square_of_final_element(self, R, d31):
        found = decompose_leading_power(normal_mul(R, R), d31)
        assert Decomposition(2, R, Fraction(1)) in found

    def test_monomial_powers(self):
        found = decompose_leading_power(X ** 4, DIAG)
        assert Decomposition(2, X ** 2, Fraction(1)) in found
        assert Decomposition(4, X, Fraction(1)) in found

    def test_square_of_linear_form(self):
        assert Decomposition(2, X + Y, Fraction(1)) in decompose_leading_power((X + Y) ** 2, DIAG)

    def test_max_k(self):
        found = decompose_leading_power(X ** 4, DIAG, max_k=2)
        assert [dec.k for dec in found] == [2]

    def test_no_power(self):
        assert decompose_leading_power(X + Y, DIAG) == []


class TestFindF:
    def test_recovers_final_remark_solution(self, R, F, d31):
        search = find_F(R, d31, 10)
        assert search.found
        assert search.contains(F)

    def test_none_within_bound(self):
        search = find_F(X * Y, DIAG, 5)
        assert not search.found
        assert search.describe() == "none within bound 5"

    def test_particular_solution_and_kernel(self):
        search = find_F(Y ** 2, DIAG, 5)
        assert search.particular == WeylElement({(1, 1): Fraction(1, 2)})
        assert search.kernel == [Y ** 2]
        assert search.contains(WeylElement({(1, 1): Fraction(1, 2), (0, 2): 3}))

    def test_requires_homogeneous_input(self, R):
        with pytest.raises(PreconditionError):
            find_F(R + 1, Direction(3, -1), 10)

    def test_solve_leading_power(self, R, F, d31):
        pairs = solve_leading_power(normal_mul(R, R), d31, 10)
        assert any(dec.R == R and search.contains(F) for dec, search in pairs)


class TestReduceUpperEdge:
    def test_untwists_a_square(self):
        final, trace = reduce_upper_edge(parse_element("(Y - X^3)^2 + X"), 16)
        assert final == Y ** 2 + X
        assert trace == [(3, Fraction(1))]

    def test_nothing_to_untwist(self):
        P = Y ** 2 + X
        assert reduce_upper_edge(P, 16) == (P, [])
        assert reduce_upper_edge(X ** 2 * Y, 16) == (X ** 2 * Y, [])

    def test_chain_of_two(self):
        hidden = apply_phi(apply_phi(Y ** 2 + X, Fraction(-1, 2), 2), 2, 3)
        final, trace = reduce_upper_edge(hidden, 16)
        assert final == Y ** 2 + X
        assert trace == [(3, Fraction(-2)), (2, Fraction(1, 2))]

    def test_iteration_cap(self):
        with pytest.raises(PreconditionError):
            reduce_upper_edge(Y, 0)


class TestCheckPair:
    def test_generators(self):
        report = check_pair(Y, X)
        assert report.bracket_ok
        assert report.verdict == Verdict.GENERATES_BY_COROLLARY
        assert report.mass == 1

    def test_shifted_generator(self):
        assert check_pair(Y, X + Y ** 2).verdict == Verdict.GENERATES_BY_COROLLARY

    def test_wrong_sign(self):
        report = check_pair(X, Y)
        assert not report.bracket_ok
        assert report.bracket == "-1"
        assert report.verdict == Verdict.BRACKET_NOT_ONE


class TestNodes:
    def test_necessary_conditions_for_both_elements(self):
        state = check_necessary_node(initial_state(Y, X))
        assert state["verdict"] == Verdict.NECESSARY_CONDITION_VIOLATED
        assert any(v.startswith("P: ") for v in state["violations"])
        assert any(v.startswith("Q: ") for v in state["violations"])

    def test_bound_contradiction(self):
        state = initial_state((X + Y) ** 2, X)
        state["mass_p"] = 3
        state = bound_node(state)
        assert state["bound_report"].implied_bound == 17
        assert state["verdict"] == Verdict.CONTRADICTS_BOUND

    def test_bound_consistency(self):
        state = initial_state(X + Y, X)
        state["mass_p"] = 2
        assert bound_node(state)["verdict"] == Verdict.CONSISTENT_WITH_BOUNDS

    def test_errors_are_recorded(self):
        state = classify_node(initial_state(WeylElement.zero(), X))
        assert isinstance(state["error"], PreconditionError)
        assert state["error_message"].startswith("Classification failed")
