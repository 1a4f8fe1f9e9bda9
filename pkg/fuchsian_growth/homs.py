"""Counting homomorphisms Γ → S_n and the subgroups they parametrise.

Cocompact groups use the Frobenius character sum

    |Hom_C(Γ, S_n)| = (n!)^e · ∏|C_i| · Σ_χ ∏χ(C_i) / χ(1)^k

with (e, k) = (2g − 1, d − 2 + 2g) for oriented and (g − 1, d − 2 + g) for
non-oriented signatures (every Frobenius–Schur indicator of S_n is +1).
Groups with cusps or boundary are free products Z_{m_1} * ... * F_r and
count as (n!)^r ∏ e_{m_i}(n).
"""

from __future__ import annotations

import itertools
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Iterator, Optional

from fuchsian_growth.cache import CharacterCache
from fuchsian_growth.characters import character_column
from fuchsian_growth.errors import (
    BudgetExceeded,
    ConsistencyError,
    DivisibilityViolation,
    IndivisibleIndex,
    IntegralityViolation,
    InvalidClassVector,
    SignatureMismatch,
)
from fuchsian_growth.helpers import as_integer, exact_div
from fuchsian_growth.partitions import (
    class_size,
    cycle_types_dividing,
    elements_of_order_dividing,
    enumerate_partitions,
    hook_degree,
    partition_count,
)
from fuchsian_growth.policy import POLICY_DEFAULT, Policy
from fuchsian_growth.signature import (
    cover_genus,
    format_signature,
    free_rank,
    index_for_genus,
    is_cocompact,
    require_cocompact,
)
from fuchsian_growth.trace import NULL_TRACER, Tracer
from fuchsian_growth.types import (
    ClassVector,
    CycleType,
    FuchsianSignature,
    HomCountSeries,
    HomSeriesMode,
    Partition,
    SubgroupCounts,
    SurfaceCount,
)

logger = logging.getLogger(__name__)


# ---------- Character sums ----------

def _exponents(sig: FuchsianSignature) -> tuple[int, int]:
    d = len(sig.periods)
    if sig.oriented:
        return 2 * sig.genus - 1, d - 2 + 2 * sig.genus
    return sig.genus - 1, d - 2 + sig.genus


def _frobenius_total(
    sig: FuchsianSignature,
    n: int,
    weights: dict[Partition, int],
    witness: object,
) -> int:
    """(n!)^e · Σ_λ w_λ / χ_λ(1)^k, where w_λ already carries ∏|C_i|χ_λ(C_i)."""
    e, k = _exponents(sig)
    fact = math.factorial(n)
    acc = 0
    if k >= 0:
        # w/f^k = w·(n!/f)^k / (n!)^k
        for lam, w in weights.items():
            if w:
                acc += w * (fact // hook_degree(lam)) ** k
        value = Fraction(acc) * Fraction(fact) ** (e - k)
    else:
        for lam, w in weights.items():
            if w:
                acc += w * hook_degree(lam) ** (-k)
        value = Fraction(acc) * Fraction(fact) ** e
    count = as_integer(value, IntegralityViolation, "character sum", witness=witness)
    if count < 0:
        raise IntegralityViolation(f"negative homomorphism count {count}", witness=witness)
    return count


def _check_class_vector(sig: FuchsianSignature, cv: ClassVector, n: int) -> None:
    if len(cv.classes) != len(sig.periods):
        raise InvalidClassVector(f"{len(cv.classes)} classes for {len(sig.periods)} periods")
    for c, m in zip(cv.classes, sig.periods):
        if c.n != n:
            raise InvalidClassVector(f"class {c} is not in S_{n}")
        if not c.parts_divide(m):
            raise InvalidClassVector(f"class {c} has elements of order not dividing {m}")


def _fixed_count(
    sig: FuchsianSignature,
    cv: ClassVector,
    n: int,
    cache: Optional[CharacterCache],
    policy: Policy,
) -> int:
    _check_class_vector(sig, cv, n)
    lams = enumerate_partitions(n)
    weights = {lam: 1 for lam in lams}
    for c in cv.classes:
        column = character_column(c, cache, policy)
        size = class_size(c)
        for lam in lams:
            if weights[lam]:
                weights[lam] *= size * column[lam]
    return _frobenius_total(sig, n, weights, witness=cv)


def hom_count_fixed(
    sig: FuchsianSignature,
    cv: ClassVector,
    n: int,
    cache: Optional[CharacterCache] = None,
    policy: Policy = POLICY_DEFAULT,
) -> int:
    """|Hom_C(Γ, S_n)| for an oriented cocompact Γ."""
    if not sig.oriented:
        raise SignatureMismatch("use hom_count_nonoriented_fixed for non-oriented signatures")
    require_cocompact(sig)
    return _fixed_count(sig, cv, n, cache, policy)


def hom_count_nonoriented_fixed(
    sig: FuchsianSignature,
    cv: ClassVector,
    n: int,
    cache: Optional[CharacterCache] = None,
    policy: Policy = POLICY_DEFAULT,
) -> int:
    if sig.oriented:
        raise SignatureMismatch("use hom_count_fixed for oriented signatures")
    require_cocompact(sig)
    return _fixed_count(sig, cv, n, cache, policy)


# ---------- Free products ----------

def hom_count_free_product(sig: FuchsianSignature, n: int) -> int:
    r = free_rank(sig)
    return math.factorial(n) ** r * math.prod(elements_of_order_dividing(m, n) for m in sig.periods)


def hom_count_free_product_fixed(sig: FuchsianSignature, cv: ClassVector, n: int) -> int:
    r = free_rank(sig)
    _check_class_vector(sig, cv, n)
    return math.factorial(n) ** r * math.prod(class_size(c) for c in cv.classes)


# ---------- Series ----------

def admissible_class_vectors(sig: FuchsianSignature, n: int) -> Iterator[ClassVector]:
    """Every ClassVector with parts of classes[i] dividing m_i, streamed in canonical order."""
    pools = [list(cycle_types_dividing(m, n)) for m in sig.periods]
    for combo in itertools.product(*pools):
        yield ClassVector(tuple(combo))


def _order_class_sums(
    m: int,
    n: int,
    cache: Optional[CharacterCache],
    policy: Policy,
) -> dict[Partition, int]:
    """λ → Σ_{π^m = 1} χ_λ(π)."""
    sums = {lam: 0 for lam in enumerate_partitions(n)}
    for c in cycle_types_dividing(m, n):
        size = class_size(c)
        for lam, value in character_column(c, cache, policy).items():
            sums[lam] += size * value
    return sums


def _cocompact_total(
    sig: FuchsianSignature,
    n: int,
    mode: HomSeriesMode,
    cache: Optional[CharacterCache],
    policy: Policy,
) -> int:
    if n == 0:
        return 1
    if mode is HomSeriesMode.CLASS_VECTORS:
        return sum(_fixed_count(sig, cv, n, cache, policy) for cv in admissible_class_vectors(sig, n))
    per_order = {m: _order_class_sums(m, n, cache, policy) for m in sorted(set(sig.periods))}
    weights = {lam: math.prod(per_order[m][lam] for m in sig.periods) for lam in enumerate_partitions(n)}
    return _frobenius_total(sig, n, weights, witness=(format_signature(sig), n))


def hom_count(
    sig: FuchsianSignature,
    n: int,
    mode: HomSeriesMode = HomSeriesMode.FACTORED,
    cache: Optional[CharacterCache] = None,
    policy: Policy = POLICY_DEFAULT,
) -> int:
    """|Hom(Γ, S_n)|."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    if not is_cocompact(sig):
        return hom_count_free_product(sig, n)
    return _cocompact_total(sig, n, mode, cache, policy)


def hom_series(
    sig: FuchsianSignature,
    N: int,
    mode: HomSeriesMode = HomSeriesMode.FACTORED,
    cache: Optional[CharacterCache] = None,
    policy: Policy = POLICY_DEFAULT,
    tracer: Tracer = NULL_TRACER,
) -> HomCountSeries:
    """h_0..h_N; the h_n are computed concurrently and collected in order of n."""
    if N < 1:
        raise ValueError(f"series length N must be at least 1, got {N}")
    inner = policy.replace(threads=1)

    def one(n: int) -> int:
        with tracer.stage("hom_count", n=n, mode=mode.value) as details:
            value = hom_count(sig, n, mode, cache, inner)
            details["digits"] = len(str(value))
        return value

    ns = range(1, N + 1)
    if policy.threads > 1 and is_cocompact(sig):
        with ThreadPoolExecutor(max_workers=policy.threads) as pool:
            values = list(pool.map(one, ns))
    else:
        values = [one(n) for n in ns]
    logger.debug("hom series for %s up to %d done", format_signature(sig), N)
    return HomCountSeries(signature=sig, values=(1, *values))


# ---------- Transitive sieve ----------

def transitive_sieve(series: HomCountSeries) -> SubgroupCounts:
    """t_n = h_n − Σ_{k<n} C(n−1, k−1)·t_k·h_{n−k}; a_n = t_n/(n−1)!."""
    h = series.values
    if not h or h[0] != 1:
        raise ConsistencyError("series must start with h_0 = 1", witness=h[:1])
    t: list[int] = []
    a: list[int] = []
    s: list[int] = []
    running = 0
    for n in range(1, series.N + 1):
        tn = h[n] - sum(math.comb(n - 1, k - 1) * t[k - 1] * h[n - k] for k in range(1, n))
        if tn < 0:
            raise IntegralityViolation(f"negative transitive count t_{n} = {tn}", witness=n)
        an = exact_div(tn, math.factorial(n - 1), DivisibilityViolation, f"t_{n}", witness=n)
        running += an
        t.append(tn)
        a.append(an)
        s.append(running)
    return SubgroupCounts(signature=series.signature, t=tuple(t), a=tuple(a), s=tuple(s))


def subgroup_counts(
    sig: FuchsianSignature,
    N: int,
    mode: HomSeriesMode = HomSeriesMode.FACTORED,
    cache: Optional[CharacterCache] = None,
    policy: Policy = POLICY_DEFAULT,
    tracer: Tracer = NULL_TRACER,
) -> tuple[HomCountSeries, SubgroupCounts]:
    series = hom_series(sig, N, mode, cache, policy, tracer)
    with tracer.stage("sieve", n=N):
        counts = transitive_sieve(series)
    return series, counts


# ---------- Torsion-free subgroups ----------

def pinned_hom_series(
    sig: FuchsianSignature,
    N: int,
    cache: Optional[CharacterCache] = None,
    policy: Policy = POLICY_DEFAULT,
    tracer: Tracer = NULL_TRACER,
) -> HomCountSeries:
    """Actions in which every elliptic generator has only full m_i-cycles."""
    require_cocompact(sig)
    values = [1]
    for k in range(1, N + 1):
        if any(k % m for m in sig.periods):
            values.append(0)
            continue
        cv = ClassVector(tuple(CycleType.uniform(m, k) for m in sig.periods))
        with tracer.stage("pinned_hom_count", n=k):
            values.append(_fixed_count(sig, cv, k, cache, policy))
    return HomCountSeries(signature=sig, values=tuple(values), pinned=True)


def torsion_free_a_n(
    sig: FuchsianSignature,
    n: int,
    cache: Optional[CharacterCache] = None,
    policy: Policy = POLICY_DEFAULT,
    tracer: Tracer = NULL_TRACER,
) -> int:
    """Number of torsion-free subgroups of index n in a cocompact Γ."""
    require_cocompact(sig)
    bad = [m for m in sig.periods if n % m]
    if bad:
        raise IndivisibleIndex(f"periods {bad} do not divide {n}")
    counts = transitive_sieve(pinned_hom_series(sig, n, cache, policy, tracer))
    return counts.a_n(n)


def surfaces_of_genus(
    sig: FuchsianSignature,
    genus: int,
    force: bool = False,
    cache: Optional[CharacterCache] = None,
    policy: Policy = POLICY_DEFAULT,
    tracer: Tracer = NULL_TRACER,
) -> SurfaceCount:
    """Torsion-free subgroups of Γ that are closed surface groups of the given genus.

    An index whose p(n) exceeds the partition budget is only counted with
    force=True; otherwise the result comes back skipped (count None), or
    BudgetExceeded is raised under policy.strict_budget.
    """
    if not sig.oriented:
        raise SignatureMismatch("surface counting needs an oriented signature")
    require_cocompact(sig)
    n = index_for_genus(sig, genus)
    if cover_genus(sig, n) != genus:
        raise ConsistencyError(f"index {n} does not give genus {genus}", witness=n)
    size = partition_count(n)
    if size > policy.partition_budget:
        logger.warning(
            "index %d needs p(%d) = %d partitions, beyond the budget of %d%s",
            n, n, size, policy.partition_budget, "" if force else "; skipped (force to run)",
        )
        if not force:
            if policy.strict_budget:
                raise BudgetExceeded(f"p({n}) = {size} exceeds the partition budget {policy.partition_budget}")
            return SurfaceCount(sig, genus, n, None)
    return SurfaceCount(sig, genus, n, torsion_free_a_n(sig, n, cache, policy, tracer))
