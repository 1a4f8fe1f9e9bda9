"""Census of candidate maximal arithmetic lattices Γ_{S,𝔇} under a covolume budget.

For each field that survives the degree, discriminant and Chinburg–Friedman
prefilters, finite ramification sets Ram_f are explored depth-first with
parity and branch-and-bound pruning, then S-sets disjoint from Ram_f are
explored under the (N(P) + 1)/2 growth factor. A candidate is kept when the
lower end of its certified covolume range may lie at or below the budget.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from fuchsian_growth.borel import (
    SIEGEL_FLOOR,
    bracket_upper,
    cf_lower_bound,
    degree_bound,
    discriminant_bound,
    formula_range,
    is_uniform,
    s_set_budget_ok,
)
from fuchsian_growth.errors import CensusTooLarge, InvalidBracket
from fuchsian_growth.intervals import Enclosure
from fuchsian_growth.policy import POLICY_DEFAULT, Policy
from fuchsian_growth.trace import NULL_TRACER, Tracer
from fuchsian_growth.types import (
    BracketMode,
    BracketValue,
    CensusCandidate,
    Covolume,
    CovolumeRange,
    NumberFieldInvariants,
    PiMultiple,
    PrimeIdeal,
    RamificationData,
    RealValue,
    as_enclosure,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CensusOptions:
    bracket: BracketValue = field(default_factory=lambda: BracketValue(1))
    include_s_sets: bool = True
    max_ram: Optional[int] = None  # cap on |Ram_f|
    prefilter: bool = True


def _possibly_le(value: Covolume, x: RealValue, dps: int) -> bool:
    if isinstance(value, PiMultiple) and isinstance(x, PiMultiple):
        return value.coefficient <= x.coefficient
    return as_enclosure(value, dps).possibly_le(as_enclosure(x, dps))


def _scale(value: Covolume, factor: Fraction) -> Covolume:
    if isinstance(value, PiMultiple):
        return value.scale(factor)
    return value * factor


def _clamp_siegel(value: Covolume, dps: int) -> Covolume:
    if isinstance(value, PiMultiple):
        return value if value >= SIEGEL_FLOOR else SIEGEL_FLOOR
    floor = SIEGEL_FLOOR.enclosure(dps).lo
    return Enclosure(max(value.lo, floor), max(value.hi, floor))


def field_survives(field: NumberFieldInvariants, x: RealValue, dps: int) -> bool:
    """Degree, discriminant and Chinburg–Friedman prefilters (h(k,2,A) ≤ h_k)."""
    xe = as_enclosure(x, dps)
    if xe.hi < 1:
        # every bound below is stated for x ≥ 1; only the CF test is meaningful here
        return cf_lower_bound(field.degree, field.class_number, dps).possibly_le(xe)
    if field.degree > degree_bound(x, dps):
        logger.debug("%s dropped: degree %d above bound", field.label, field.degree)
        return False
    if field.discriminant > discriminant_bound(x, field.degree, dps):
        logger.debug("%s dropped: discriminant %d above bound", field.label, field.discriminant)
        return False
    if not cf_lower_bound(field.degree, field.class_number, dps).possibly_le(xe):
        logger.debug("%s dropped by the Chinburg–Friedman bound", field.label)
        return False
    return True


class _FieldCensus:
    def __init__(self, fld: NumberFieldInvariants, x: RealValue, options: CensusOptions, dps: int) -> None:
        self.field = fld
        self.x = x
        self.options = options
        self.dps = dps
        self.primes = fld.primes
        self.base = formula_range(fld, RamificationData(fld.degree), options.bracket, dps)
        self.rows: list[CensusCandidate] = []

    def _ram_factor(self, p: PrimeIdeal) -> Fraction:
        # Adding P multiplies Borel's numerator by N − 1; under the interval
        # bracket the upper bracket doubles as well.
        f = Fraction(p.norm - 1)
        return f / 2 if self.options.bracket.mode is BracketMode.INTERVAL else f

    def run(self) -> list[CensusCandidate]:
        self._ram_dfs(0, ())
        return self.rows

    def _optimism(self, start: int) -> Fraction:
        sub_unit = [self._ram_factor(p) for p in self.primes[start:] if self._ram_factor(p) < 1]
        return math.prod(sub_unit, start=Fraction(1))

    def _ram_dfs(self, start: int, chosen: tuple[PrimeIdeal, ...]) -> None:
        ram = RamificationData(self.field.degree, chosen)
        if ram.parity_ok:
            self._emit_ram(ram)
        if self.options.max_ram is not None and len(chosen) >= self.options.max_ram:
            return
        low = _scale(self.base.low, math.prod((self._ram_factor(p) for p in chosen), start=Fraction(1)))
        for i in range(start, len(self.primes)):
            p = self.primes[i]
            optimistic = _scale(low, self._ram_factor(p) * self._optimism(i + 1))
            if not _possibly_le(optimistic, self.x, self.dps):
                continue
            self._ram_dfs(i + 1, chosen + (p,))

    def _emit_ram(self, ram: RamificationData) -> None:
        exact = self.options.bracket.exact
        if exact is not None and exact > bracket_upper(self.field, ram):
            return
        rng = formula_range(self.field, ram, self.options.bracket, self.dps)
        low = _clamp_siegel(rng.low, self.dps)
        if not _possibly_le(low, self.x, self.dps):
            return
        self._add(ram, (), CovolumeRange(low, rng.high))
        if self.options.include_s_sets:
            free = tuple(p for p in self.primes if p not in ram.finite)
            self._s_dfs(ram, rng, free, 0, ())

    def _s_dfs(
        self,
        ram: RamificationData,
        rng: CovolumeRange,
        free: tuple[PrimeIdeal, ...],
        start: int,
        chosen: tuple[PrimeIdeal, ...],
    ) -> None:
        for i in range(start, len(free)):
            s_set = chosen + (free[i],)
            norms = [p.norm for p in s_set]
            if not s_set_budget_ok(norms, self.x, self.dps):
                break
            grow = Fraction(math.prod(n + 1 for n in norms))
            low = _clamp_siegel(_scale(rng.low, grow / 2 ** len(s_set)), self.dps)
            if not _possibly_le(low, self.x, self.dps):
                # norms are ascending, so later primes only grow the product
                break
            self._add(ram, s_set, CovolumeRange(low, _scale(rng.high, grow)))
            self._s_dfs(ram, rng, free, i + 1, s_set)

    def _add(self, ram: RamificationData, s_set: tuple[PrimeIdeal, ...], covolume: CovolumeRange) -> None:
        self.rows.append(CensusCandidate(
            field_label=self.field.label,
            ramification=ram.finite,
            s_set=s_set,
            covolume=covolume,
            bracket=self.options.bracket.describe(),
            uniform=is_uniform(self.field, ram),
        ))


def census(
    table: Sequence[NumberFieldInvariants],
    x: RealValue,
    options: CensusOptions = CensusOptions(),
    policy: Policy = POLICY_DEFAULT,
    tracer: Tracer = NULL_TRACER,
) -> list[CensusCandidate]:
    """All candidates whose certified covolume lower end may be ≤ x, canonically sorted."""
    dps = policy.precision_dps
    if options.bracket.exact is not None and options.bracket.exact < 1:
        raise InvalidBracket(f"bracket must be a positive integer, got {options.bracket.exact}")
    if not _possibly_le(SIEGEL_FLOOR, x, dps):
        logger.info("budget %s is below the Siegel floor π/42; no lattice qualifies", x)
        return []
    survivors = [f for f in table if not options.prefilter or field_survives(f, x, dps)]

    def one(fld: NumberFieldInvariants) -> list[CensusCandidate]:
        with tracer.stage("census_field", field=fld.label) as details:
            rows = _FieldCensus(fld, x, options, dps).run()
            details["rows"] = len(rows)
        return rows

    if policy.threads > 1 and len(survivors) > 1:
        with ThreadPoolExecutor(max_workers=policy.threads) as pool:
            batches = list(pool.map(one, survivors))
    else:
        batches = [one(f) for f in survivors]
    rows = [row for batch in batches for row in batch]
    if len(rows) > policy.census_cap:
        raise CensusTooLarge(f"{len(rows)} candidates exceed the census cap {policy.census_cap}")
    rows.sort(key=lambda c: candidate_sort_key(c, dps))
    logger.debug("census at budget %s: %d candidates from %d fields", x, len(rows), len(survivors))
    return rows


def candidate_sort_key(c: CensusCandidate, dps: int) -> tuple[Fraction, str, tuple[str, ...], tuple[str, ...]]:
    return (
        c.covolume.low_enclosure(dps).lo,
        str(c.field_label),
        tuple(p.label for p in c.ramification),
        tuple(p.label for p in c.s_set),
    )

