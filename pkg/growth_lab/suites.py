"""Bound suites: exact checks of the character and class-size inequalities,
empirical constants for bounds whose absolute constants are unspecified,
and growth tables for subgroup counts.

Exact checks produce EXACT_PASS / EXACT_FAIL points; everything that
estimates an unspecified constant is REPORT_ONLY and never fails a run.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Protocol, Sequence, TypeVar, Union

from fuchsian_growth.cache import CharacterCache
from fuchsian_growth.characters import (
    EmpiricalConstant,
    character_bound_report,
    class_char_product_report,
    degree_power_sum,
    fomin_lulov_check,
    refined_fl_report,
)
from fuchsian_growth.errors import BudgetExceeded
from fuchsian_growth.helpers import is_prime
from fuchsian_growth.homs import hom_series, subgroup_counts, transitive_sieve
from fuchsian_growth.intervals import Enclosure, exp_enclosure, log_enclosure, power_enclosure
from fuchsian_growth.partitions import class_size, cycle_types_dividing
from fuchsian_growth.policy import POLICY_DEFAULT, Policy
from fuchsian_growth.signature import format_signature, require_fuchsian
from fuchsian_growth.types import FuchsianSignature

from growth_lab.reports import BoundReport, PointStatus, ReportPoint, max_enclosure

logger = logging.getLogger(__name__)

T = TypeVar("T")

FL_ENVELOPE = 24
CLASS_SIZE_ENVELOPE = 30
CLASS_SIZE_M_MAX = 12
FL_M_RANGE = range(2, 7)
DEGREE_SUM_WINDOW_START = 6
DEGREE_SUM_CHECKPOINT = 25


def _status(ok: bool) -> PointStatus:
    return PointStatus.EXACT_PASS if ok else PointStatus.EXACT_FAIL


def _evaluate(grid: Sequence[T], fn: Callable[[T], ReportPoint], policy: Policy) -> tuple[ReportPoint, ...]:
    """Grid points are independent; pool.map keeps them in grid order."""
    if policy.threads > 1 and len(grid) > 1:
        with ThreadPoolExecutor(max_workers=policy.threads) as pool:
            return tuple(pool.map(fn, grid))
    return tuple(fn(g) for g in grid)


def _check_envelope(name: str, n_max: int, limit: int, force: bool) -> None:
    if n_max > limit and not force:
        raise BudgetExceeded(f"{name} is limited to n_max ≤ {limit}, got {n_max}")


# ---------- Exact bound checks ----------

def verify_fl(
    n_max: int,
    force: bool = False,
    cache: Optional[CharacterCache] = None,
    policy: Policy = POLICY_DEFAULT,
) -> BoundReport:
    """Fomin–Lulov on every (n, m) with m ∈ {2..6}, m | n ≤ n_max, all λ ⊢ n."""
    _check_envelope("fl", n_max, FL_ENVELOPE, force)
    inner = policy.replace(threads=1)
    grid = [(n, m) for n in range(2, n_max + 1) for m in FL_M_RANGE if n % m == 0]

    def point(nm: tuple[int, int]) -> ReportPoint:
        n, m = nm
        report = fomin_lulov_check(n, m, strict=False, cache=cache, policy=inner)
        if report.all_pass:
            top = report.maximizer
            return ReportPoint((("n", n), ("m", m)), PointStatus.EXACT_PASS, top.ratio, f"max at λ={top.lam}")
        bad = report.failures[0]
        logger.error("Fomin–Lulov fails at n=%d m=%d λ=%s", n, m, bad.lam)
        return ReportPoint((("n", n), ("m", m)), PointStatus.EXACT_FAIL, bad.ratio, f"λ={bad.lam}")

    return BoundReport(
        bound="fl",
        grid=(("n_max", str(n_max)), ("m", "2..6")),
        points=_evaluate(grid, point, policy),
        notes=("value = max_λ |χ(π)|^m·n! / ((a!·m^a)^m·χ(1)); the bound holds iff every value ≤ 1",),
    )


def verify_class_size_bound(
    n_max: int,
    force: bool = False,
    policy: Policy = POLICY_DEFAULT,
) -> BoundReport:
    """|π^{S_n}| ≤ e^n·(n^n)^{1−1/m} for every π with π^m = 1, m ≤ 12, n ≤ n_max."""
    _check_envelope("classsize", n_max, CLASS_SIZE_ENVELOPE, force)
    dps = policy.precision_dps
    grid = [(n, m) for n in range(1, n_max + 1) for m in range(2, CLASS_SIZE_M_MAX + 1)]

    def point(nm: tuple[int, int]) -> ReportPoint:
        n, m = nm
        # m-th powers: |C|^m / n^{n(m−1)} ≤ e^{nm}, so only e^{nm} needs an enclosure
        best, cls = max(
            ((Fraction(class_size(c) ** m, n ** (n * (m - 1))), c) for c in cycle_types_dividing(m, n)),
            key=lambda t: (t[0], t[1].parts),
        )
        bound = exp_enclosure(n * m, dps)
        ok = Enclosure.point(best).certainly_le(bound)
        value = power_enclosure(best, Fraction(1, m), dps) / exp_enclosure(n, dps)
        witness = f"max at class {cls}" if ok else f"class {cls}"
        return ReportPoint((("n", n), ("m", m)), _status(ok), value, witness)

    return BoundReport(
        bound="classsize",
        grid=(("n_max", str(n_max)), ("m", f"2..{CLASS_SIZE_M_MAX}")),
        points=_evaluate(grid, point, policy),
        notes=("value = max_C |C| / (e^n·(n^n)^{1−1/m}); the bound holds iff every value ≤ 1",),
    )


def degree_sum_trend(
    n_max: int,
    s: Union[int, Fraction] = 1,
    policy: Policy = POLICY_DEFAULT,
) -> BoundReport:
    """Σ_λ χ_λ(1)^{−s} for 1 ≤ n ≤ n_max.

    For s = 1 the sums are checked to decrease strictly from n = 6 on and to
    lie in (2, 11/5) at n = 25; other exponents are reported only.
    """
    s = Fraction(s)
    if s <= 0:
        raise ValueError(f"exponent s must be positive, got {s}")
    inner = policy.replace(threads=1)
    values = _evaluate_values(list(range(1, n_max + 1)), lambda n: degree_power_sum(n, s, inner), policy)
    points = []
    for n, value in zip(range(1, n_max + 1), values):
        params = (("n", n), ("s", s))
        if s != 1 or n <= DEGREE_SUM_WINDOW_START:
            points.append(ReportPoint(params, PointStatus.REPORT_ONLY, value))
            continue
        previous = values[n - 2]
        assert isinstance(value, Fraction) and isinstance(previous, Fraction)
        ok = value < previous
        witness = None if ok else f"sum at n={n - 1} is {previous}"
        if n == DEGREE_SUM_CHECKPOINT and not 2 < value < Fraction(11, 5):
            ok, witness = False, "outside (2, 2.2)"
        points.append(ReportPoint(params, _status(ok), value, witness))
    notes: tuple[str, ...] = ()
    if s == 1:
        notes = (f"strict decrease checked for {DEGREE_SUM_WINDOW_START} ≤ n ≤ {n_max}; the sum rises from n = 5 to n = 6",)
    elif s < 1:
        notes = (f"s = {s}: the limit 2 is approached only far beyond computable n; values are reported only",)
    return BoundReport(
        bound="degreesum",
        grid=(("n_max", str(n_max)), ("s", str(s))),
        points=tuple(points),
        notes=notes,
    )


def _evaluate_values(ns: list[int], fn: Callable[[int], T], policy: Policy) -> list[T]:
    if policy.threads > 1 and len(ns) > 1:
        with ThreadPoolExecutor(max_workers=policy.threads) as pool:
            return list(pool.map(fn, ns))
    return [fn(n) for n in ns]


# ---------- Empirical constants for character bounds ----------

def _constant_report(
    bound: str,
    grid: list[tuple[int, int]],
    report: Callable[[int, int], EmpiricalConstant],
    policy: Policy,
    assert_le_one: Callable[[int, int], bool] = lambda n, m: False,
    notes: tuple[str, ...] = (),
) -> BoundReport:
    def point(nm: tuple[int, int]) -> ReportPoint:
        n, m = nm
        const = report(n, m)
        witness = f"λ={const.lam} on {const.cycles}"
        if assert_le_one(n, m):
            return ReportPoint((("n", n), ("m", m)), _status(const.value.certainly_le(1)), const.value, witness)
        return ReportPoint((("n", n), ("m", m)), PointStatus.REPORT_ONLY, const.value, witness)

    points = _evaluate(grid, point, policy)
    values = [p.value for p in points if isinstance(p.value, Enclosure)]
    n_max = max((n for n, _ in grid), default=0)
    return BoundReport(
        bound=bound,
        grid=(("n_max", str(n_max)),),
        points=points,
        constant=max_enclosure(values),
        notes=notes,
    )


def class_char_constant(
    n_max: int,
    m_max: int = 6,
    cache: Optional[CharacterCache] = None,
    policy: Policy = POLICY_DEFAULT,
) -> BoundReport:
    """b̂(n, m) for |π^{S_n}|·|χ(π)| < b·(n^n)^{1−1/m}·χ(1)^{1/m}·(2e)^n; b̂ ≤ 1 is checked at n = 6."""
    inner = policy.replace(threads=1)
    grid = [(n, m) for n in range(2, n_max + 1) for m in range(2, m_max + 1)]
    return _constant_report(
        "classchar",
        grid,
        lambda n, m: class_char_product_report(n, m, cache, inner),
        policy,
        assert_le_one=lambda n, m: n == 6 and m in (2, 3),
        notes=("the absolute constant b is unspecified; values are empirical",),
    )


def character_bound_constant(
    n_max: int,
    m_max: int = 6,
    cache: Optional[CharacterCache] = None,
    policy: Policy = POLICY_DEFAULT,
) -> BoundReport:
    """b̂(n, m) for |χ(π)| ≤ b·(2n)^{C(σ)/2}·χ(1)^{1/m}·n^{1/2} over π^m = 1."""
    inner = policy.replace(threads=1)
    grid = [(n, m) for n in range(2, n_max + 1) for m in range(2, m_max + 1)]
    return _constant_report(
        "charbound",
        grid,
        lambda n, m: character_bound_report(n, m, cache, inner),
        policy,
        notes=("C(σ) counts the cycles of π whose length is not m",),
    )


def refined_fl_constant(
    n_max: int,
    m_max: int = 6,
    cache: Optional[CharacterCache] = None,
    policy: Policy = POLICY_DEFAULT,
) -> BoundReport:
    """b̂(n, m) for |χ(π)| ≤ b·n^{1/2−1/(2m)}·χ(1)^{1/m} on the class (m^{n/m})."""
    inner = policy.replace(threads=1)
    grid = [(n, m) for n in range(2, n_max + 1) for m in range(2, m_max + 1) if n % m == 0]
    return _constant_report(
        "refinedfl",
        grid,
        lambda n, m: refined_fl_report(n, m, cache, inner),
        policy,
    )


# ---------- Subgroup growth ----------

def _require_range(n_max: int) -> None:
    if n_max < 2:
        raise ValueError(f"growth reports need n_max ≥ 2, got {n_max}")


def uniform_bound_constant(
    sig: FuchsianSignature,
    n_max: int,
    cache: Optional[CharacterCache] = None,
    policy: Policy = POLICY_DEFAULT,
) -> BoundReport:
    """ĉ = max_{2 ≤ n ≤ n_max} s_n^{1/(μn)} / n, with s_n ≥ 1 checked at every n."""
    mu = require_fuchsian(sig)
    _require_range(n_max)
    dps = policy.precision_dps
    _, counts = subgroup_counts(sig, n_max, cache=cache, policy=policy)
    points = []
    for n in range(2, n_max + 1):
        s_n = counts.s_n(n)
        value = power_enclosure(max(s_n, 1), 1 / (mu * n), dps) / n
        points.append(ReportPoint((("n", n),), _status(s_n >= 1), value))
    return BoundReport(
        bound="uniform",
        grid=(("signature", format_signature(sig)), ("n_max", str(n_max))),
        points=tuple(points),
        constant=max_enclosure([p.value for p in points if isinstance(p.value, Enclosure)]),
    )


def growth_trend(
    sig: FuchsianSignature,
    n_max: int,
    cache: Optional[CharacterCache] = None,
    policy: Policy = POLICY_DEFAULT,
) -> BoundReport:
    """ρ_n = log s_n / (μ·n·log n) with the indicator s_n ≥ (n!)^μ.

    Only ρ_n > 0 whenever s_n ≥ 2 is checked; the indicator is recorded and the
    first n from which it holds through n_max is noted as the observed crossover.
    """
    mu = require_fuchsian(sig)
    _require_range(n_max)
    dps = policy.precision_dps
    _, counts = subgroup_counts(sig, n_max, cache=cache, policy=policy)
    points = []
    indicators = []
    for n in range(2, n_max + 1):
        s_n = counts.s_n(n)
        # s_n ≥ (n!)^{p/q}  ⇔  s_n^q ≥ (n!)^p
        crossed = s_n ** mu.denominator >= math.factorial(n) ** mu.numerator
        indicators.append(crossed)
        params = (("n", n), ("s_n>=(n!)^mu", "yes" if crossed else "no"))
        if s_n < 2:
            points.append(ReportPoint(params, PointStatus.REPORT_ONLY, 0))
            continue
        rho = log_enclosure(s_n, dps) / (log_enclosure(n, dps) * (mu * n))
        points.append(ReportPoint(params, _status(rho.lo > 0), rho))
    crossover = next(
        (n for n in range(2, n_max + 1) if all(indicators[n - 2:])),
        None,
    )
    note = (
        f"s_n ≥ (n!)^μ holds for every {crossover} ≤ n ≤ {n_max}"
        if crossover is not None
        else f"s_n ≥ (n!)^μ does not hold at n = {n_max}; no crossover observed"
    )
    return BoundReport(
        bound="growth",
        grid=(("signature", format_signature(sig)), ("n_max", str(n_max))),
        points=tuple(points),
        notes=(note,),
    )


def hom_upper_constant(
    sig: FuchsianSignature,
    n_max: int,
    cache: Optional[CharacterCache] = None,
    policy: Policy = POLICY_DEFAULT,
) -> BoundReport:
    """ĉ₂ = max (h_n / (n^n)^{μ+1})^{1/(d₁n)}, d₁ = max(d, 1)."""
    mu = require_fuchsian(sig)
    _require_range(n_max)
    dps = policy.precision_dps
    d1 = max(sig.d, 1)
    series = hom_series(sig, n_max, cache=cache, policy=policy)
    points = []
    for n in range(2, n_max + 1):
        ratio = Enclosure.point(series.values[n]) / power_enclosure(n, n * (mu + 1), dps)
        value = power_enclosure(ratio, Fraction(1, d1 * n), dps)
        points.append(ReportPoint((("n", n),), PointStatus.REPORT_ONLY, value))
    return BoundReport(
        bound="homupper",
        grid=(("signature", format_signature(sig)), ("n_max", str(n_max))),
        points=tuple(points),
        constant=max_enclosure([p.value for p in points if isinstance(p.value, Enclosure)]),
    )


def subgroup_upper_constant(
    sig: FuchsianSignature,
    n_max: int,
    cache: Optional[CharacterCache] = None,
    policy: Policy = POLICY_DEFAULT,
) -> BoundReport:
    """ĉ₅ = max (s_n / n^{μn})^{1/(d₁n)}."""
    mu = require_fuchsian(sig)
    _require_range(n_max)
    dps = policy.precision_dps
    d1 = max(sig.d, 1)
    _, counts = subgroup_counts(sig, n_max, cache=cache, policy=policy)
    points = []
    for n in range(2, n_max + 1):
        ratio = Enclosure.point(counts.s_n(n)) / power_enclosure(n, mu * n, dps)
        value = power_enclosure(ratio, Fraction(1, d1 * n), dps)
        points.append(ReportPoint((("n", n),), PointStatus.REPORT_ONLY, value))
    return BoundReport(
        bound="subgroupupper",
        grid=(("signature", format_signature(sig)), ("n_max", str(n_max))),
        points=tuple(points),
        constant=max_enclosure([p.value for p in points if isinstance(p.value, Enclosure)]),
    )


def asymptotic_ratio(
    sig: FuchsianSignature,
    n_max: int,
    cache: Optional[CharacterCache] = None,
    policy: Policy = POLICY_DEFAULT,
) -> BoundReport:
    """a_n / (n·(n!)^μ); tends to 1 for free groups and 2 for surface groups."""
    mu = require_fuchsian(sig)
    dps = policy.precision_dps
    _, counts = subgroup_counts(sig, n_max, cache=cache, policy=policy)
    points = []
    for n in range(1, n_max + 1):
        denominator = power_enclosure(math.factorial(n), mu, dps) * n
        value = Enclosure.point(counts.a_n(n)) / denominator
        points.append(ReportPoint((("n", n),), PointStatus.REPORT_ONLY, value))
    return BoundReport(
        bound="ratio",
        grid=(("signature", format_signature(sig)), ("n_max", str(n_max))),
        points=tuple(points),
    )


def triangle_flatness(
    p: int,
    q: int,
    r: int,
    n: int,
    cache: Optional[CharacterCache] = None,
    policy: Policy = POLICY_DEFAULT,
) -> BoundReport:
    """For primes p, q, r > n the triangle group (p, q, r) has a_k = 0 for 2 ≤ k ≤ n."""
    for x in (p, q, r):
        if not is_prime(x) or x <= n:
            raise ValueError(f"periods must be primes above n = {n}, got {x}")
    sig = FuchsianSignature(periods=(p, q, r))
    counts = transitive_sieve(hom_series(sig, max(n, 1), cache=cache, policy=policy))
    points = tuple(
        ReportPoint((("k", k),), _status(counts.a_n(k) == 0), counts.a_n(k))
        for k in range(2, n + 1)
    )
    return BoundReport(
        bound="flatness",
        grid=(("signature", format_signature(sig)), ("n", str(n))),
        points=points,
        notes=("no lower bound on a_n can hold uniformly over all Fuchsian groups",),
    )


# ---------- Registry ----------

@dataclass(frozen=True)
class SuiteParams:
    n_max: int
    signature: Optional[FuchsianSignature] = None
    s: Fraction = Fraction(1)
    force: bool = False

    def require_signature(self, suite: str) -> FuchsianSignature:
        if self.signature is None:
            raise ValueError(f"suite {suite!r} needs a signature")
        return self.signature


class Suite(Protocol):
    def __call__(self, params: SuiteParams, cache: Optional[CharacterCache], policy: Policy) -> BoundReport: ...


def _flatness(params: SuiteParams, cache: Optional[CharacterCache], policy: Policy) -> BoundReport:
    sig = params.require_signature("flatness")
    if len(sig.periods) != 3 or sig.genus or sig.cusps or sig.boundary or not sig.oriented:
        raise ValueError("flatness needs a triangle signature (p,q,r)")
    p, q, r = sig.periods
    return triangle_flatness(p, q, r, params.n_max, cache, policy)


SUITES: dict[str, Suite] = {
    "fl": lambda p, cache, policy: verify_fl(p.n_max, p.force, cache, policy),
    "classsize": lambda p, cache, policy: verify_class_size_bound(p.n_max, p.force, policy),
    "degreesum": lambda p, cache, policy: degree_sum_trend(p.n_max, p.s, policy),
    "classchar": lambda p, cache, policy: class_char_constant(p.n_max, cache=cache, policy=policy),
    "charbound": lambda p, cache, policy: character_bound_constant(p.n_max, cache=cache, policy=policy),
    "refinedfl": lambda p, cache, policy: refined_fl_constant(p.n_max, cache=cache, policy=policy),
    "uniform": lambda p, cache, policy: uniform_bound_constant(p.require_signature("uniform"), p.n_max, cache, policy),
    "growth": lambda p, cache, policy: growth_trend(p.require_signature("growth"), p.n_max, cache, policy),
    "homupper": lambda p, cache, policy: hom_upper_constant(p.require_signature("homupper"), p.n_max, cache, policy),
    "subgroupupper": lambda p, cache, policy: subgroup_upper_constant(
        p.require_signature("subgroupupper"), p.n_max, cache, policy
    ),
    "ratio": lambda p, cache, policy: asymptotic_ratio(p.require_signature("ratio"), p.n_max, cache, policy),
    "flatness": _flatness,
}
