"""Runs bound suites and collects their reports."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional

from fuchsian_growth.cache import CharacterCache
from fuchsian_growth.policy import POLICY_DEFAULT, Policy
from fuchsian_growth.trace import NULL_TRACER, Tracer

from growth_lab.reports import BoundReport
from growth_lab.suites import SUITES, SuiteParams

logger = logging.getLogger(__name__)


class UnknownSuite(KeyError):
    pass


@dataclass
class SuiteRun:
    """Reports of several suites, keyed by suite name."""

    reports: dict[str, BoundReport] = field(default_factory=dict)

    def add(self, name: str, report: BoundReport) -> None:
        self.reports[name] = report

    @property
    def all_pass(self) -> bool:
        return all(r.all_pass for r in self.reports.values())

    def failure_count(self) -> dict[str, int]:
        return {name: len(r.failures) for name, r in self.reports.items()}


class SuiteHarness:
    """Run named suites with a shared cache and policy."""

    def __init__(
        self,
        policy: Policy = POLICY_DEFAULT,
        cache: Optional[CharacterCache] = None,
        tracer: Tracer = NULL_TRACER,
    ) -> None:
        self._policy = policy
        self._cache = cache
        self._tracer = tracer

    @staticmethod
    def names() -> list[str]:
        return sorted(SUITES)

    def run_single(self, name: str, params: SuiteParams) -> BoundReport:
        try:
            suite = SUITES[name]
        except KeyError:
            raise UnknownSuite(f"unknown suite {name!r}; choose from {', '.join(self.names())}") from None
        with self._tracer.stage("suite", n=params.n_max, suite=name) as details:
            report = suite(params, self._cache, self._policy)
            details["points"] = len(report.points)
            details["failures"] = len(report.failures)
        if not report.all_pass:
            logger.warning("suite %s: %d exact check(s) failed", name, len(report.failures))
        return report

    def run_many(self, names: list[str], params: SuiteParams) -> SuiteRun:
        run = SuiteRun()
        for name in sorted(names):
            run.add(name, self.run_single(name, params))
        return run

    def reverify(self, name: str, params: SuiteParams, threads: int) -> bool:
        """Re-run a suite with a different thread count and a fresh cache.

        True when the exact-checked points agree with the first run.
        """
        first = self.run_single(name, params)
        other = SuiteHarness(self._policy.replace(threads=threads), CharacterCache(), self._tracer)
        second = other.run_single(name, params)
        same = first.exact_signature() == second.exact_signature()
        if not same:
            logger.error("suite %s differs between %d and %d threads", name, self._policy.threads, threads)
        return same
