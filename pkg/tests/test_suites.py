"""Tests for the bound suites and the suite harness."""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Optional

import pytest

from fuchsian_growth.cache import CharacterCache
from fuchsian_growth.errors import BudgetExceeded, NonFuchsian
from fuchsian_growth.intervals import Enclosure
from fuchsian_growth.policy import Policy
from fuchsian_growth.signature import parse_signature
from fuchsian_growth.trace import Tracer
from fuchsian_growth.types import FuchsianSignature

from growth_lab.harness import SuiteHarness, UnknownSuite
from growth_lab.reports import BoundReport, PointStatus, ReportPoint
from growth_lab.suites import (
    FL_ENVELOPE,
    SUITES,
    SuiteParams,
    asymptotic_ratio,
    character_bound_constant,
    class_char_constant,
    degree_sum_trend,
    growth_trend,
    hom_upper_constant,
    refined_fl_constant,
    subgroup_upper_constant,
    triangle_flatness,
    uniform_bound_constant,
    verify_class_size_bound,
    verify_fl,
)


class TestExactSuites:
    def test_fomin_lulov_to_twenty(self, policy: Policy) -> None:
        report = verify_fl(20, policy=policy)
        assert report.all_pass
        assert {(p.param("n"), p.param("m")) for p in report.points} >= {(6, 2), (6, 3), (20, 5), (18, 6)}
        assert all(p.status is PointStatus.EXACT_PASS for p in report.points)

    def test_fomin_lulov_envelope(self) -> None:
        with pytest.raises(BudgetExceeded):
            verify_fl(FL_ENVELOPE + 1)

    def test_class_size_bound(self, policy: Policy) -> None:
        report = verify_class_size_bound(12, policy=policy)
        assert report.all_pass
        assert len(report.points) == 12 * 11

    def test_degree_sum_window(self, policy: Policy) -> None:
        report = degree_sum_trend(25, policy=policy)
        assert report.all_pass
        by_n = {p.param("n"): p for p in report.points}
        assert by_n[5].status is PointStatus.REPORT_ONLY
        assert by_n[5].value == Fraction(46, 15)
        assert by_n[25].status is PointStatus.EXACT_PASS
        assert "rises from n = 5 to n = 6" in report.notes[0]

    def test_degree_sum_fractional_exponent(self, policy: Policy) -> None:
        report = degree_sum_trend(8, Fraction(1, 2), policy)
        assert all(p.status is PointStatus.REPORT_ONLY for p in report.points)
        assert all(isinstance(p.value, Enclosure) for p in report.points)
        assert report.notes


class TestEmpiricalSuites:
    def test_class_char_checked_at_six(self, policy: Policy) -> None:
        report = class_char_constant(6, policy=policy)
        exact = {(p.param("n"), p.param("m")) for p in report.exact_points}
        assert exact == {(6, 2), (6, 3)}
        assert report.all_pass
        assert report.constant is not None

    def test_character_bound_reports_only(self, policy: Policy) -> None:
        report = character_bound_constant(6, policy=policy)
        assert report.exact_points == ()
        assert report.constant is not None and report.constant.lo > 0

    def test_refined_fl_grid(self, policy: Policy) -> None:
        report = refined_fl_constant(8, policy=policy)
        assert all(p.param("n") % p.param("m") == 0 for p in report.points)


class TestGrowthSuites:
    def test_uniform_constant(self, modular: FuchsianSignature, policy: Policy) -> None:
        report = uniform_bound_constant(modular, 10, policy=policy)
        assert report.all_pass
        assert report.constant is not None

    def test_growth_crossover(self, free2: FuchsianSignature, policy: Policy) -> None:
        report = growth_trend(free2, 10, policy=policy)
        assert report.all_pass
        assert all(p.param("s_n>=(n!)^mu") == "yes" for p in report.points)
        assert report.notes == ("s_n ≥ (n!)^μ holds for every 2 ≤ n ≤ 10",)

    def test_growth_needs_fuchsian(self, policy: Policy) -> None:
        with pytest.raises(NonFuchsian):
            growth_trend(parse_signature("(2,3,6)"), 6, policy=policy)

    def test_growth_needs_range(self, free2: FuchsianSignature) -> None:
        with pytest.raises(ValueError):
            growth_trend(free2, 1)

    def test_upper_constants(self, genus2: FuchsianSignature, policy: Policy) -> None:
        for report in (hom_upper_constant(genus2, 6, policy=policy), subgroup_upper_constant(genus2, 6, policy=policy)):
            assert report.exact_points == ()
            assert report.constant is not None
            assert len(report.points) == 5

    def test_free_group_ratio_tends_to_one(self, free2: FuchsianSignature, policy: Policy) -> None:
        report = asymptotic_ratio(free2, 12, policy=policy)
        last = report.points[-1].value
        assert isinstance(last, Enclosure)
        assert Fraction(3, 4) < last.lo and last.hi < 1

    def test_triangle_flatness(self, policy: Policy) -> None:
        report = triangle_flatness(11, 13, 17, 6, policy=policy)
        assert report.all_pass
        assert [p.value for p in report.points] == [0] * 5

    def test_flatness_needs_large_primes(self) -> None:
        with pytest.raises(ValueError):
            triangle_flatness(2, 3, 7, 4)


class TestRegistry:
    def test_names(self) -> None:
        assert SuiteHarness.names() == sorted(
            ["fl", "classsize", "degreesum", "classchar", "charbound", "refinedfl",
             "uniform", "growth", "homupper", "subgroupupper", "ratio", "flatness"]
        )

    def test_signature_required(self, policy: Policy) -> None:
        with pytest.raises(ValueError):
            SUITES["growth"](SuiteParams(n_max=6), None, policy)

    def test_flatness_needs_triangle(self, genus2: FuchsianSignature, policy: Policy) -> None:
        with pytest.raises(ValueError):
            SUITES["flatness"](SuiteParams(n_max=4, signature=genus2), None, policy)

    def test_flatness_through_registry(self, policy: Policy) -> None:
        params = SuiteParams(n_max=4, signature=parse_signature("(5,7,11)"))
        assert SUITES["flatness"](params, None, policy).all_pass


def _broken(params: SuiteParams, cache: Optional[CharacterCache], policy: Policy) -> BoundReport:
    point = ReportPoint((("n", params.n_max),), PointStatus.EXACT_FAIL, 2, "forced")
    return BoundReport(bound="broken", grid=(), points=(point,))


class TestHarness:
    def test_run_single_traces(self, policy: Policy, tracer: Tracer) -> None:
        harness = SuiteHarness(policy, CharacterCache(), tracer)
        report = harness.run_single("fl", SuiteParams(n_max=8))
        assert report.all_pass
        [record] = tracer.for_stage("suite")
        assert record.details["suite"] == "fl"
        assert record.details["failures"] == 0

    def test_unknown_suite(self, policy: Policy) -> None:
        with pytest.raises(UnknownSuite):
            SuiteHarness(policy).run_single("nope", SuiteParams(n_max=4))

    def test_run_many(self, policy: Policy) -> None:
        run = SuiteHarness(policy, CharacterCache()).run_many(["degreesum", "fl"], SuiteParams(n_max=10))
        assert sorted(run.reports) == ["degreesum", "fl"]
        assert run.all_pass
        assert run.failure_count() == {"degreesum": 0, "fl": 0}

    def test_failure_is_logged(
        self,
        policy: Policy,
        monkeypatch: pytest.MonkeyPatch,
        caplog: pytest.LogCaptureFixture,
    ) -> None:
        monkeypatch.setitem(SUITES, "broken", _broken)
        with caplog.at_level(logging.WARNING, logger="growth_lab.harness"):
            report = SuiteHarness(policy).run_single("broken", SuiteParams(n_max=3))
        assert not report.all_pass
        assert "1 exact check(s) failed" in caplog.text

    @pytest.mark.parametrize("suite", ["fl", "classsize", "degreesum"])
    def test_reverify_across_threads(self, suite: str, policy: Policy) -> None:
        harness = SuiteHarness(policy, CharacterCache())
        assert harness.reverify(suite, SuiteParams(n_max=12), threads=4)
