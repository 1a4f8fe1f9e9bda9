"""Irreducible characters of S_n by the Murnaghan–Nakayama rule.

χ_λ(ρσ) = Σ_ν (−1)^{l(ν)} χ_{λ∖ν}(σ), where ρ is a cycle of length r and ν
runs over the rim r-hooks of λ. The recursion always strips the longest
remaining cycle; once only fixed points remain the value is the hook-length
degree of what is left.
"""

from __future__ import annotations

import logging
import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from fuchsian_growth.cache import CharacterCache
from fuchsian_growth.errors import BoundViolation, IndivisibleIndex, InvalidPartition
from fuchsian_growth.intervals import Enclosure, e_enclosure, power_enclosure
from fuchsian_growth.partitions import (
    class_size,
    cycle_types,
    cycle_types_dividing,
    degree_of_parts,
    enumerate_partitions,
    hook_degree,
    rim_hook_remainders,
)
from fuchsian_growth.policy import POLICY_DEFAULT, Policy
from fuchsian_growth.types import CharacterQuery, CycleType, Partition

logger = logging.getLogger(__name__)

DEFAULT_CACHE = CharacterCache()


def _resolve_cache(cache: Optional[CharacterCache], policy: Policy) -> Optional[CharacterCache]:
    if not policy.cache_enabled:
        return None
    return cache if cache is not None else DEFAULT_CACHE


def _mn(parts: tuple[int, ...], cycles: tuple[int, ...], cache: Optional[CharacterCache]) -> int:
    # cycles are sorted descending
    if not cycles or cycles[0] == 1:
        return degree_of_parts(parts)
    key = (parts, cycles)
    if cache is not None:
        hit = cache.get(key)
        if hit is not None:
            return hit
    r, rest = cycles[0], cycles[1:]
    total = 0
    for remainder, leg in rim_hook_remainders(parts, r):
        term = _mn(remainder, rest, cache)
        total += -term if leg % 2 else term
    if cache is not None:
        cache.put(key, total)
    return total


# ---------- Point evaluation ----------

def character(
    q: CharacterQuery,
    cache: Optional[CharacterCache] = None,
    policy: Policy = POLICY_DEFAULT,
) -> int:
    """χ_λ(π) for π of the queried cycle type."""
    return _mn(q.lam.parts, q.cycles.parts, _resolve_cache(cache, policy))


def chi(
    lam: Partition,
    cycles: CycleType,
    cache: Optional[CharacterCache] = None,
    policy: Policy = POLICY_DEFAULT,
) -> int:
    return character(CharacterQuery(lam, cycles), cache, policy)


def sign(c: CycleType) -> int:
    return c.sign


def character_column(
    c: CycleType,
    cache: Optional[CharacterCache] = None,
    policy: Policy = POLICY_DEFAULT,
) -> dict[Partition, int]:
    """{λ → χ_λ(c)} for every λ ⊢ n, in canonical partition order."""
    resolved = _resolve_cache(cache, policy)
    lams = enumerate_partitions(c.n)

    def evaluate(lam: Partition) -> int:
        return _mn(lam.parts, c.parts, resolved)

    if policy.threads > 1 and len(lams) > 64:
        with ThreadPoolExecutor(max_workers=policy.threads) as pool:
            values = list(pool.map(evaluate, lams))
    else:
        values = [evaluate(lam) for lam in lams]
    return dict(zip(lams, values))


@dataclass(frozen=True)
class CharacterTable:
    n: int
    characters: tuple[Partition, ...]
    classes: tuple[CycleType, ...]
    values: tuple[tuple[int, ...], ...]  # values[i][j] = χ_{characters[i]}(classes[j])

    def value(self, lam: Partition, c: CycleType) -> int:
        return self.values[self.characters.index(lam)][self.classes.index(c)]

    def column(self, c: CycleType) -> tuple[int, ...]:
        j = self.classes.index(c)
        return tuple(row[j] for row in self.values)


def character_table(
    n: int,
    cache: Optional[CharacterCache] = None,
    policy: Policy = POLICY_DEFAULT,
) -> CharacterTable:
    classes = cycle_types(n)
    lams = enumerate_partitions(n)
    columns = [character_column(c, cache, policy) for c in classes]
    values = tuple(tuple(col[lam] for col in columns) for lam in lams)
    logger.debug("character table of S_%d: %d x %d", n, len(lams), len(classes))
    return CharacterTable(n=n, characters=lams, classes=classes, values=values)


# ---------- Degree power sums ----------

def degree_power_sum(
    n: int,
    s: Union[int, Fraction],
    policy: Policy = POLICY_DEFAULT,
) -> Union[Fraction, Enclosure]:
    """Σ_λ χ_λ(1)^{−s}; exact for integer s, an outward-rounded enclosure otherwise."""
    s = Fraction(s)
    if s <= 0:
        raise ValueError(f"exponent s must be positive, got {s}")
    degrees = Counter(hook_degree(lam) for lam in enumerate_partitions(n))
    if s.denominator == 1:
        k = s.numerator
        return sum((Fraction(mult, deg ** k) for deg, mult in degrees.items()), Fraction(0))
    total = Enclosure.point(0)
    for deg, mult in sorted(degrees.items()):
        total = total + power_enclosure(deg, -s, policy.precision_dps) * mult
    return total


# ---------- Fomin–Lulov ----------

@dataclass(frozen=True)
class FominLulovRow:
    lam: Partition
    value: int
    degree: int
    lhs: int  # |χ(π)|^m · n!
    rhs: int  # (a!·m^a)^m · χ(1)

    @property
    def passed(self) -> bool:
        return self.lhs <= self.rhs

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.lhs, self.rhs)


@dataclass(frozen=True)
class FominLulovReport:
    n: int
    m: int
    rows: tuple[FominLulovRow, ...]

    @property
    def all_pass(self) -> bool:
        return all(r.passed for r in self.rows)

    @property
    def failures(self) -> tuple[FominLulovRow, ...]:
        return tuple(r for r in self.rows if not r.passed)

    @property
    def maximizer(self) -> FominLulovRow:
        return max(self.rows, key=lambda r: (r.ratio, r.lam.parts))


def fomin_lulov_check(
    n: int,
    m: int,
    strict: bool = True,
    cache: Optional[CharacterCache] = None,
    policy: Policy = POLICY_DEFAULT,
) -> FominLulovReport:
    """|χ(π)|^m · n! ≤ (a!·m^a)^m · χ(1) on the class (m^a), for every λ ⊢ n."""
    if m < 2:
        raise InvalidPartition(f"cycle length m must be at least 2, got {m}")
    if n % m:
        raise IndivisibleIndex(f"{m} does not divide {n}")
    a = n // m
    c = CycleType.uniform(m, n)
    column = character_column(c, cache, policy)
    scale = (math.factorial(a) * m ** a) ** m
    rows = []
    for lam, value in column.items():
        degree = hook_degree(lam)
        rows.append(FominLulovRow(
            lam=lam,
            value=value,
            degree=degree,
            lhs=abs(value) ** m * math.factorial(n),
            rhs=scale * degree,
        ))
    report = FominLulovReport(n=n, m=m, rows=tuple(rows))
    if strict and not report.all_pass:
        witness = report.failures[0]
        raise BoundViolation(f"Fomin–Lulov bound fails at n={n}, m={m}, λ={witness.lam}", witness=witness.lam)
    return report


# ---------- Empirical constants ----------

@dataclass(frozen=True)
class EmpiricalConstant:
    """Largest observed value of a bound's hidden constant, with the maximizing pair."""

    name: str
    n: int
    m: int
    value: Enclosure
    lam: Optional[Partition] = None
    cycles: Optional[CycleType] = None


def _argmax(candidates: list[tuple[Fraction, Partition, CycleType]]) -> tuple[Fraction, Partition, CycleType]:
    return max(candidates, key=lambda t: (t[0], t[1].parts, t[2].parts))


def class_char_product_report(
    n: int,
    m: int,
    cache: Optional[CharacterCache] = None,
    policy: Policy = POLICY_DEFAULT,
) -> EmpiricalConstant:
    """max |π^{S_n}|·|χ(π)| / [(n^n)^{1−1/m} · χ(1)^{1/m} · (2e)^n] over π^m = 1, all χ."""
    if n < 2:
        raise InvalidPartition(f"class-size product needs n ≥ 2, got {n}")
    if m < 2:
        raise InvalidPartition(f"m must be at least 2, got {m}")
    # Compare the exact m-th power (|C|·|χ|)^m / (χ(1)·n^{n(m−1)}); take the root once.
    candidates = []
    for c in cycle_types_dividing(m, n):
        size = class_size(c)
        for lam, value in character_column(c, cache, policy).items():
            if value:
                ratio = Fraction((size * abs(value)) ** m, hook_degree(lam) * n ** (n * (m - 1)))
                candidates.append((ratio, lam, c))
    best, lam, c = _argmax(candidates)
    dps = policy.precision_dps
    value = power_enclosure(best, Fraction(1, m), dps) / (e_enclosure(dps) * 2) ** n
    return EmpiricalConstant("class_char_product", n, m, value, lam, c)


def character_bound_report(
    n: int,
    m: int,
    cache: Optional[CharacterCache] = None,
    policy: Policy = POLICY_DEFAULT,
) -> EmpiricalConstant:
    """max |χ(π)| / [(2n)^{C(σ)/2} · χ(1)^{1/m} · n^{1/2}] over π^m = 1.

    π = ρσ with ρ the product of the m-cycles and C(σ) the number of cycles of σ.
    """
    if m < 2 or n < 1:
        raise InvalidPartition(f"need m ≥ 2 and n ≥ 1, got m={m}, n={n}")
    candidates = []
    for c in cycle_types_dividing(m, n):
        short = sum(1 for p in c.parts if p != m)
        for lam, value in character_column(c, cache, policy).items():
            if value:
                ratio = Fraction(abs(value) ** (2 * m), (2 * n) ** (short * m) * hook_degree(lam) ** 2 * n ** m)
                candidates.append((ratio, lam, c))
    best, lam, c = _argmax(candidates)
    value = power_enclosure(best, Fraction(1, 2 * m), policy.precision_dps)
    return EmpiricalConstant("character_bound", n, m, value, lam, c)


def refined_fl_report(
    n: int,
    m: int,
    cache: Optional[CharacterCache] = None,
    policy: Policy = POLICY_DEFAULT,
) -> EmpiricalConstant:
    """max |χ(π)| / [n^{1/2−1/(2m)} · χ(1)^{1/m}] on the class (m^{n/m})."""
    if m < 2:
        raise InvalidPartition(f"m must be at least 2, got {m}")
    if n % m:
        raise IndivisibleIndex(f"{m} does not divide {n}")
    c = CycleType.uniform(m, n)
    candidates = [
        (Fraction(abs(value) ** (2 * m), n ** (m - 1) * hook_degree(lam) ** 2), lam, c)
        for lam, value in character_column(c, cache, policy).items()
        if value
    ]
    best, lam, c = _argmax(candidates)
    value = power_enclosure(best, Fraction(1, 2 * m), policy.precision_dps)
    return EmpiricalConstant("refined_fomin_lulov", n, m, value, lam, c)
