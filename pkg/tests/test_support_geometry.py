from fractions import Fraction
from random import Random

import pytest

from algebra.support_geometry import (
    NEG_INFINITY,
    Direction,
    LatticePoint,
    boundary_st_en,
    bracket_rs,
    compare_directions,
    dir_set,
    extract_fP,
    graded_components,
    is_aligned,
    is_homogeneous,
    is_subrectangular,
    leading,
    mass,
    necessary_conditions,
    newton_polygon,
    nonneg_order_key,
    not_aligned,
    st_en,
    succ_pred,
    valuation,
)
from algebra.unipoly import UniPoly
from algebra.weyl_core import X, Y, CommPoly, WeylElement, normal_mul, psi
from shared.services.oracle_suite import random_direction, random_element
from shared.utils.errors import PreconditionError
from shared.utils.text_io import parse_element

DIAG = Direction(1, 1)


class TestDirection:
    def test_requires_coprime_pair(self):
        with pytest.raises(PreconditionError) as excinfo:
            Direction(2, 4)
        assert excinfo.value.code == "DIRECTION_NOT_COPRIME"

    def test_parse(self):
        assert Direction.parse("3,-1") == Direction(3, -1)
        with pytest.raises(PreconditionError):
            Direction.parse("3;1")

    def test_interval_order(self):
        assert compare_directions(Direction(1, 0), Direction(0, 1)) == -1
        assert compare_directions(Direction(0, 1), Direction(1, 0)) == 1
        assert compare_directions(DIAG, DIAG) == 0
        with pytest.raises(PreconditionError):
            compare_directions(DIAG, Direction(-1, -1))

    def test_closed_interval_order(self):
        ds = [Direction(-1, 1), Direction(1, 1), Direction(1, -1), Direction(0, 1), Direction(1, 0)]
        ordered = sorted(ds, key=nonneg_order_key)
        assert ordered == [Direction(1, -1), Direction(1, 0), Direction(1, 1), Direction(0, 1), Direction(-1, 1)]
        with pytest.raises(PreconditionError):
            nonneg_order_key(Direction(-1, -1))


class TestValuation:
    def test_examples(self, R, d31):
        assert valuation(R, d31) == 3
        assert valuation(X ** 2 * Y, DIAG) == 3

    def test_zero_is_negative_infinity(self):
        v = valuation(WeylElement.zero(), DIAG)
        assert v is NEG_INFINITY
        assert v < -10 ** 9
        assert max(v, 0) == 0
        with pytest.raises(TypeError):
            v + 1

    def test_negative_infinity_is_totally_ordered(self):
        assert NEG_INFINITY <= NEG_INFINITY
        assert NEG_INFINITY >= NEG_INFINITY
        assert not NEG_INFINITY < NEG_INFINITY
        assert NEG_INFINITY < Fraction(-10 ** 9)
        assert not NEG_INFINITY > -5
        assert 3 > NEG_INFINITY
        assert not 3 <= NEG_INFINITY
        assert sorted([2, NEG_INFINITY, -1]) == [NEG_INFINITY, -1, 2]
        with pytest.raises(TypeError):
            NEG_INFINITY < "a"

    def test_leading(self, R, d31):
        assert leading(X ** 2 + X * Y + Y, DIAG) == CommPoly({(2, 0): 1, (1, 1): 1})
        assert leading(R, d31) == psi(R)
        assert leading((X + Y) ** 2, DIAG) == CommPoly({(2, 0): 1, (1, 1): 2, (0, 2): 1})

    def test_leading_of_zero_is_refused(self):
        with pytest.raises(PreconditionError):
            leading(WeylElement.zero(), DIAG)


class TestMass:
    def test_examples(self, R):
        assert mass(X + Y) == 2
        assert mass(normal_mul(R, R)) == 5
        assert mass(X * Y + normal_mul(Y, X)) == 1

    def test_is_homogeneous(self, R, d31):
        assert is_homogeneous(2 * X * Y + 1, Direction(1, -1))
        assert is_homogeneous(X + Y, Direction(1, 1))
        assert is_homogeneous(R, d31)
        assert not is_homogeneous(R, Direction(1, 1))

    def test_graded_components(self, R):
        assert graded_components(X + Y) == [(1, X), (-1, Y)]
        two_xy = 2 * X * Y + 1
        assert graded_components(two_xy) == [(0, two_xy)]
        square = normal_mul(R, R)
        levels = [level for level, _ in graded_components(square)]
        assert levels == [2, 0, -2, -4, -6]
        assert sum((part for _, part in graded_components(square)), WeylElement.zero()) == square


class TestNewtonPolygon:
    def test_unit_square(self):
        polygon = newton_polygon(X + Y + X * Y + 1)
        assert polygon.kind == "polygon"
        assert polygon.vertices == ((0, 0), (1, 0), (1, 1), (0, 1))

    def test_collinear_support_is_a_segment(self, R):
        polygon = newton_polygon(R)
        assert polygon.kind == "segment"
        assert set(polygon.vertices) == {LatticePoint(1, 0), LatticePoint(3, 6)}

    def test_monomial_is_a_point(self):
        polygon = newton_polygon(X ** 2 * Y ** 3)
        assert polygon.kind == "point"
        assert polygon.edges() == []

    def test_dir_set(self, R):
        assert dir_set(X + Y) == [Direction(1, 1), Direction(-1, -1)]
        assert set(dir_set(R)) == {Direction(3, -1), Direction(-3, 1)}
        assert dir_set(X ** 2 * Y ** 3) == []

    def test_square_normals(self):
        assert dir_set(X + Y + X * Y + 1) == [Direction(1, 0), Direction(0, 1), Direction(-1, 0), Direction(0, -1)]


class TestSuccPred:
    def test_succ_of_horizontal(self):
        succ, _ = succ_pred(X + Y, Direction(1, 0))
        assert succ == DIAG

    def test_pred_of_vertical(self):
        P = (Y - X ** 3) ** 2 + X
        _, pred = succ_pred(P, Direction(0, 1))
        assert pred == Direction(1, 3)

    def test_pred_just_above_diagonal(self):
        _, pred = succ_pred(X + Y, Direction(1, 2))
        assert pred == DIAG

    def test_monomial_is_refused(self):
        with pytest.raises(PreconditionError):
            succ_pred(X * Y, DIAG)


class TestStEn:
    def test_closed_form(self, R, d31):
        assert st_en(R, d31) == ((1, 0), (3, 6))

    def test_monomial(self):
        for d in (DIAG, Direction(3, -1), Direction(-1, 2)):
            assert st_en(X ** 2 * Y ** 3, d) == ((2, 3), (2, 3))

    def test_segment(self):
        assert st_en(X ** 2 + X * Y, DIAG) == ((2, 0), (1, 1))

    def test_boundary_walk_agrees(self, R, d31):
        assert boundary_st_en(R, d31) == st_en(R, d31)
        P = parse_element("X^3 + X*Y^2 + Y + X^2*Y^2")
        for d in dir_set(P):
            if d.is_positive():
                assert boundary_st_en(P, d) == st_en(P, d)


class TestExtractFP:
    def test_examples(self, R, d31):
        assert extract_fP(R, d31) == (1, 0, UniPoly({0: 1, 3: 2, 6: 1}))
        assert extract_fP(X ** 2 + X * Y, DIAG) == (2, 0, UniPoly({0: 1, 1: 1}))
        assert extract_fP(X ** 2 * Y ** 3, Direction(1, 0)) == (2, 3, UniPoly.constant(1))

    def test_requires_positive_rho(self):
        with pytest.raises(PreconditionError) as excinfo:
            extract_fP(X + Y, Direction(-1, 1))
        assert excinfo.value.code == "RHO_NOT_POSITIVE"


def test_subrectangular():
    assert is_subrectangular(X ** 2 * Y ** 3 + X + Y ** 3) == (2, 3)
    assert is_subrectangular(X + Y) is None
    assert is_subrectangular(X ** 2 * Y ** 3) == (2, 3)


class TestBracketRS:
    def test_graded_bracket_of_r_and_f(self, R, F, d31):
        assert bracket_rs(R, F, d31) == psi(R)

    def test_trivial_cases(self, R, d31):
        assert bracket_rs(R, R, d31).is_zero()
        assert bracket_rs(Y, X, DIAG) == CommPoly.one()

    def test_below_the_bound_is_zero(self):
        # [XY, XY + X] = X sits below v(P) + v(Q) - 2 = 2
        assert bracket_rs(X * Y, X * Y + X, DIAG).is_zero()

    def test_requires_positive_direction(self):
        with pytest.raises(PreconditionError):
            bracket_rs(X, Y, Direction(-1, -1))


def test_necessary_conditions():
    assert necessary_conditions(X + Y) == []
    violations = necessary_conditions(Y)
    assert len(violations) == 1
    assert violations[0].startswith("v_{1,-1}(P)")


def test_alignment():
    assert is_aligned((2, 0), (4, 0))
    assert is_aligned((3, 0), (2, 0))
    assert not is_aligned((0, 0), (2, 0))
    assert not_aligned((1, 1), (0, 2))
    assert not not_aligned((0, 3), (0, 2))


def test_valuation_is_additive_on_products(R, d31):
    Q = X * Y ** 2 + Fraction(1, 2) * X
    assert valuation(normal_mul(R, Q), d31) == valuation(R, d31) + valuation(Q, d31)


class TestRandomizedProperties:
    def test_leading_terms_multiply(self):
        rng = Random(5)
        for _ in range(40):
            P, Q = random_element(rng, max_degree=5), random_element(rng, max_degree=5)
            d = random_direction(rng)
            assert leading(normal_mul(P, Q), d) == leading(P, d) * leading(Q, d)

    def test_positive_diagonal_valuations_force_positive_valuations(self):
        rng = Random(6)
        checked = 0
        while checked < 40:
            P = random_element(rng)
            if not (valuation(P, Direction(1, -1)) > 0 and valuation(P, Direction(-1, 1)) > 0):
                continue
            checked += 1
            for _ in range(5):
                assert valuation(P, random_direction(rng)) > 0

    def test_graded_components_sum_back(self):
        rng = Random(7)
        for _ in range(40):
            P = random_element(rng)
            parts = graded_components(P)
            levels = [level for level, _ in parts]
            assert levels == sorted(set(levels), reverse=True)
            assert len(parts) == mass(P)
            assert all(is_homogeneous(part, Direction(1, -1)) for _, part in parts)
            assert sum((part for _, part in parts), WeylElement.zero()) == P
