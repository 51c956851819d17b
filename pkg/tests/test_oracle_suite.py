import time
from math import comb
from random import Random

import pytest

import algebra.weyl_core as weyl_core
from algebra.support_geometry import Direction
from algebra.unipoly import UniPoly, t_count
from algebra.weyl_core import X, Y, WeylElement
from shared.services import oracle_suite as suite_module
from shared.services.oracle_suite import (
    candidate_to_unipoly,
    check_bracket_powers,
    check_duality,
    check_multiplication,
    check_st_en,
    enumerate_power_candidates,
    oracle_suite,
    power_candidate_count,
    power_term_counts,
    random_direction,
    rewrite_product,
    run_power_enumeration,
)
from shared.utils.text_io import parse_element


def test_rewriting_oracle():
    assert rewrite_product(Y, X) == X * Y + 1
    assert rewrite_product(Y ** 2, X ** 2) == WeylElement({(2, 2): 1, (1, 1): 4, (0, 0): 2})


def test_closed_form_agrees_with_rewriting(R):
    assert check_multiplication(R, parse_element("Y^3 - 1/2*X*Y + 2")) is None


def test_mutant_without_factorials_is_caught(monkeypatch):
    def without_factorials(a, b, c, d):
        for k in range(min(b, c) + 1):
            yield (a + c - k, b + d - k), comb(b, k) * comb(c, k)

    monkeypatch.setattr(weyl_core, "_monomial_product", without_factorials)
    problem = check_multiplication(WeylElement.monomial(0, 2), WeylElement.monomial(2, 0))
    assert problem is not None
    assert "rewriting gives" in problem


def test_duality_and_st_en_on_a_known_element(R):
    P = parse_element("X^3 + X*Y^2 + Y + X^2*Y^2")
    assert check_duality(P) is None
    assert check_st_en(P) is None
    assert check_st_en(R) is None


def test_bracket_powers_identity(R, F, d31):
    assert check_bracket_powers(R, F, 3, d31) is None
    assert check_bracket_powers(X + Y, X * Y, 2, Direction(1, 1)) is None


def test_random_directions_are_positive():
    rng = Random(7)
    for _ in range(50):
        d = random_direction(rng)
        assert d.is_positive()
        assert abs(d.sigma) <= 5


def test_small_run_passes():
    summary = oracle_suite(seed=0, cases=5)
    assert summary.ok
    assert [s.name for s in summary.suites] == [name for name, _ in suite_module.SUITES]
    assert all(s.passed == 5 for s in summary.suites)


def test_fixed_seed_is_deterministic():
    first = oracle_suite(seed=3, cases=3)
    second = oracle_suite(seed=3, cases=3)
    assert first.model_dump() == second.model_dump()


def test_failures_are_reported_verbatim(monkeypatch):
    monkeypatch.setattr(suite_module, "check_multiplication", lambda P, Q: "forced")
    summary = oracle_suite(seed=0, cases=2)
    multiplication = next(s for s in summary.suites if s.name == "multiplication")
    assert not summary.ok
    assert multiplication.failed == 2
    assert multiplication.failures[0].detail.startswith("P = ")
    assert multiplication.failures[0].detail.endswith(": forced")


class TestPowerEnumeration:
    def test_candidates_cover_every_coefficient_pattern(self):
        candidates = list(enumerate_power_candidates(max_degree=2))
        assert len(candidates) == power_candidate_count(2) == 3 * 36
        # 1/2 + 2x + x^2, doubled
        assert ((0, 1), (1, 4), (2, 2)) in candidates
        assert candidate_to_unipoly(((0, 1), (1, 4), (2, 2))) == UniPoly({0: "1/2", 1: 2, 2: 1})
        assert power_candidate_count(4) == 6 * 3 * 36 + 4 * 3 * 216

    def test_term_counts_match_exact_powers(self):
        special = ((0, 2), (1, 2), (2, -1))  # 2 * (1 + x - x^2/2)
        assert power_term_counts(special) == {
            k: t_count(candidate_to_unipoly(special) ** k) for k in (2, 3, 4)
        }
        assert power_term_counts(special)[2] == 4
        assert power_term_counts(special)[3] == 7

    def test_small_degree_has_no_exceptions(self):
        suite = run_power_enumeration(max_degree=4)
        assert suite.failed == 0
        assert suite.passed == power_candidate_count(4) * 3

    def test_shards_partition_the_candidates(self):
        shards = [run_power_enumeration(max_degree=4, shard=s, workers=3) for s in range(3)]
        assert sum(s.passed for s in shards) == power_candidate_count(4) * 3

    def test_broken_power_count_is_reported(self, monkeypatch):
        monkeypatch.setattr(suite_module, "power_term_counts", lambda terms: {2: 3, 3: 5, 4: 5})
        suite = run_power_enumeration(max_degree=2)
        assert suite.failed == power_candidate_count(2)
        assert suite.failures[0].detail.endswith("k = 2: t(f^2) = 3")

    def test_exhaustive_flag_adds_the_enumeration(self, monkeypatch):
        stub = suite_module.SuiteResult(name="power_support_exhaustive", passed=1)
        monkeypatch.setattr(suite_module, "run_power_enumeration", lambda **kwargs: stub)
        summary = oracle_suite(seed=0, cases=1, exhaustive=True)
        assert summary.suites[-1].name == "power_support_exhaustive"

    @pytest.mark.slow
    def test_full_enumeration_is_complete_within_a_minute(self):
        start = time.perf_counter()
        summary = oracle_suite(seed=0, cases=0, workers=4, exhaustive=True)
        elapsed = time.perf_counter() - start
        exhaustive = next(s for s in summary.suites if s.name == "power_support_exhaustive")
        assert exhaustive.failed == 0
        assert exhaustive.passed == power_candidate_count(12) * 3 == 449064
        assert elapsed < 60


@pytest.mark.slow
@pytest.mark.parametrize(
    "name, cases",
    [
        ("multiplication", 200),
        ("matrix", 200),
        ("power_support", 1000),
        ("bracket_powers", 500),
        ("automorphisms", 200),
        ("st_en", 500),
        ("untwist", 200),
    ],
)
def test_suite_at_full_size(monkeypatch, name, cases):
    monkeypatch.setattr(suite_module, "SUITES", [(n, g) for n, g in suite_module.SUITES if n == name])
    summary = oracle_suite(seed=11, cases=cases)
    assert summary.ok, summary.suites[0].failures[:3]
    assert summary.suites[0].passed == cases
