"""Borel's minimal covolume for arithmetic Fuchsian groups, and the candidate bounds.

For a quaternion algebra A over a totally real field k of degree d, ramified at
d − 1 real places and the finite primes Ram_f(A), the smallest covolume in the
commensurability class is

    8π Δ^{3/2} ζ_k(2) ∏_{P ∈ Ram_f}(N(P) − 1) / ((4π²)^d · bracket).

With ζ_k(2) = q·π^{2d}/√Δ this is the exact π-multiple
8·Δ·q·∏(N(P) − 1)/(4^d · bracket) · π.
"""

from __future__ import annotations

import logging
import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

from fuchsian_growth.errors import InvalidBracket, InvalidM, ParityViolation
from fuchsian_growth.helpers import power_of_two_part
from fuchsian_growth.intervals import (
    DEFAULT_DPS,
    Enclosure,
    ceil_upper,
    exp_enclosure,
    floor_certified,
    log_enclosure,
    pi_enclosure,
    power_enclosure,
)
from fuchsian_growth.types import (
    BracketValue,
    Covolume,
    CovolumeRange,
    ExactZeta2,
    IntervalZeta2,
    NumberFieldInvariants,
    PiMultiple,
    PrimeIdeal,
    RamificationData,
    RealValue,
    as_enclosure,
)

logger = logging.getLogger(__name__)

SIEGEL_FLOOR = PiMultiple(Fraction(1, 42))


# ---------- Ramification and bracket ----------

def check_parity(field: NumberFieldInvariants, ram: RamificationData) -> None:
    if ram.degree != field.degree:
        raise ParityViolation(f"ramification data for degree {ram.degree} used with {field.label} of degree {field.degree}")
    if not ram.parity_ok:
        raise ParityViolation(
            f"|Ram(A)| = {ram.degree - 1} real + {len(ram.finite)} finite = {ram.ram_size} is odd"
        )


def bracket_upper(field: NumberFieldInvariants, ram: RamificationData) -> int:
    """2^{d + |Ram_f|} · h_k."""
    return 2 ** (field.degree + len(ram.finite)) * field.class_number


def check_bracket(field: NumberFieldInvariants, ram: RamificationData, bracket: BracketValue) -> None:
    if bracket.exact is None:
        return
    upper = bracket_upper(field, ram)
    if not 1 <= bracket.exact <= upper:
        raise InvalidBracket(f"bracket {bracket.exact} outside [1, {upper}] for {field.label}")


def is_uniform(field: NumberFieldInvariants, ram: RamificationData) -> bool:
    """Only M_2(Q), i.e. k = Q with no finite ramification, gives non-cocompact lattices."""
    return not (field.degree == 1 and not ram.finite)


def type_number_bound(field: NumberFieldInvariants) -> int:
    return power_of_two_part(field.class_number * 2 ** (field.degree - 1))


# ---------- ζ_k(2) ----------

def zeta2_enclosure(field: NumberFieldInvariants, dps: int = DEFAULT_DPS) -> Enclosure:
    z = field.zeta2
    if isinstance(z, IntervalZeta2):
        return Enclosure(z.lo, z.hi)
    pi = pi_enclosure(dps)
    return pi ** (2 * field.degree) * z.q / power_enclosure(field.discriminant, Fraction(1, 2), dps)


def as_interval_field(field: NumberFieldInvariants, dps: int = DEFAULT_DPS) -> NumberFieldInvariants:
    """The same field with ζ_k(2) replaced by a certified enclosure."""
    enc = zeta2_enclosure(field, dps)
    return NumberFieldInvariants(
        label=field.label,
        degree=field.degree,
        discriminant=field.discriminant,
        zeta2=IntervalZeta2(enc.lo, enc.hi),
        class_number=field.class_number,
        primes=field.primes,
    )


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for n ≥ 1."""
    if n < 1:
        raise ValueError(f"modulus must be positive, got {n}")
    result = 1
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            result = -result
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def quadratic_zeta2_enclosure(D: int, terms: int = 10_000, dps: int = DEFAULT_DPS) -> Enclosure:
    """ζ_k(2) = ζ(2)·L(2, χ_D) for the real quadratic field of fundamental discriminant D.

    The tail of L(2, χ_D) beyond ``terms`` is bounded by Σ_{n > T} 1/n² < 1/T.
    """
    if D <= 1 or terms < 1:
        raise ValueError(f"need a fundamental discriminant D > 1 and terms ≥ 1, got D={D}, terms={terms}")
    partial = sum((Fraction(kronecker(D, k), k * k) for k in range(1, terms + 1)), Fraction(0))
    tail = Fraction(1, terms)
    l_value = Enclosure(partial - tail, partial + tail)
    return pi_enclosure(dps) ** 2 / 6 * l_value


# ---------- Covolumes ----------

def _coefficient(field: NumberFieldInvariants, ram: RamificationData, bracket: int) -> Fraction:
    assert isinstance(field.zeta2, ExactZeta2)
    numerator = 8 * field.discriminant * field.zeta2.q * math.prod(n - 1 for n in ram.norms)
    return numerator / Fraction(4 ** field.degree * bracket)


def _interval_covolume(field: NumberFieldInvariants, ram: RamificationData, bracket: Enclosure, dps: int) -> Enclosure:
    pi = pi_enclosure(dps)
    delta = power_enclosure(field.discriminant, Fraction(3, 2), dps)
    numerator = pi * 8 * delta * zeta2_enclosure(field, dps) * math.prod(n - 1 for n in ram.norms)
    return numerator / ((pi ** 2 * 4) ** field.degree * bracket)


def min_covolume_range(
    field: NumberFieldInvariants,
    ram: RamificationData,
    bracket: BracketValue,
    dps: int = DEFAULT_DPS,
) -> CovolumeRange:
    """Certified covolume range; the endpoints stay exact π-multiples when ζ_k(2) is exact."""
    check_parity(field, ram)
    check_bracket(field, ram, bracket)
    return formula_range(field, ram, bracket, dps)


def formula_range(
    field: NumberFieldInvariants,
    ram: RamificationData,
    bracket: BracketValue,
    dps: int = DEFAULT_DPS,
) -> CovolumeRange:
    """Borel's expression without the parity and bracket checks (a census starting point)."""
    lo_bracket = bracket.exact if bracket.exact is not None else bracket_upper(field, ram)
    hi_bracket = bracket.exact if bracket.exact is not None else 1
    if isinstance(field.zeta2, ExactZeta2):
        return CovolumeRange(
            low=PiMultiple(_coefficient(field, ram, lo_bracket)),
            high=PiMultiple(_coefficient(field, ram, hi_bracket)),
        )
    return CovolumeRange(
        low=_interval_covolume(field, ram, Enclosure.point(lo_bracket), dps),
        high=_interval_covolume(field, ram, Enclosure.point(hi_bracket), dps),
    )


def min_covolume(
    field: NumberFieldInvariants,
    ram: RamificationData,
    bracket: BracketValue,
    dps: int = DEFAULT_DPS,
) -> Covolume:
    """Borel's formula: a PiMultiple when everything is exact, else a certified enclosure."""
    rng = min_covolume_range(field, ram, bracket, dps)
    if rng.exact is not None:
        return rng.exact
    low, high = rng.low_enclosure(dps), rng.high_enclosure(dps)
    return Enclosure(low.lo, high.hi)


def gamma_S_covolume(base: Covolume, S_norms: Sequence[int], m: int) -> Covolume:
    """covol(Γ_{S,𝔇}) = covol(Γ_{∅,𝔇}) · 2^{−m} ∏_{P ∈ S}(N(P) + 1)."""
    if not 0 <= m <= len(S_norms):
        raise InvalidM(f"m = {m} outside [0, {len(S_norms)}]")
    factor = Fraction(math.prod(n + 1 for n in S_norms), 2 ** m)
    if isinstance(base, PiMultiple):
        return base.scale(factor)
    return base * factor


def s_set_budget_ok(S_norms: Iterable[int], x: RealValue, dps: int = DEFAULT_DPS) -> bool:
    """∏(N(P) + 1)/2 ≤ 42x/π may hold (never rejects a set that could satisfy it)."""
    norms = list(S_norms)
    product = Fraction(math.prod(n + 1 for n in norms), 2 ** len(norms))
    if isinstance(x, PiMultiple):
        return product <= 42 * x.coefficient
    return Enclosure.point(product).possibly_le(as_enclosure(x, dps) * 42 / pi_enclosure(dps))


# ---------- Candidate bounds ----------

def cf_lower_bound(d: int, h: int, dps: int = DEFAULT_DPS) -> Enclosure:
    """0.69·exp(0.37·d − 19.08/h)."""
    if d < 1 or h < 1:
        raise ValueError(f"need d ≥ 1 and h ≥ 1, got d={d}, h={h}")
    exponent = Fraction(37, 100) * d - Fraction(1908, 100) / h
    return exp_enclosure(exponent, dps) * Fraction(69, 100)


def degree_bound(x: RealValue, dps: int = DEFAULT_DPS) -> int:
    """⌊3·ln x + 21⌋; the larger candidate when the floor is not decided."""
    xe = as_enclosure(x, dps)
    if xe.lo < 1:
        raise ValueError(f"degree bound needs x ≥ 1, got {x}")
    _, hi = floor_certified(log_enclosure(xe, dps) * 3 + 21)
    return hi


def discriminant_bound(x: RealValue, d: int, dps: int = DEFAULT_DPS) -> int:
    """Largest Δ with 8π·√Δ / (100·(4π³/3)^d) ≤ x, rounded in the caller's favour."""
    if d < 1:
        raise ValueError(f"degree must be positive, got {d}")
    xe = as_enclosure(x, dps)
    pi = pi_enclosure(dps)
    root = xe * 100 * (pi ** 3 * Fraction(4, 3)) ** d / (pi * 8)
    _, hi = floor_certified(root ** 2)
    return hi


def class_number_bound(d: int, discriminant: int, dps: int = DEFAULT_DPS) -> int:
    """⌊100·(π/12)^d·Δ⌋ from the upper endpoint."""
    value = (pi_enclosure(dps) / 12) ** d * (100 * discriminant)
    _, hi = floor_certified(value)
    return hi


def ideal_count_bound(field: Union[NumberFieldInvariants, int], x: RealValue, dps: int = DEFAULT_DPS) -> int:
    """⌈(π²/6)^d · x²⌉ ≥ number of integral ideals of norm ≤ x."""
    d = field.degree if isinstance(field, NumberFieldInvariants) else field
    xe = as_enclosure(x, dps)
    if xe.lo < 1:
        raise ValueError(f"ideal count bound needs x ≥ 1, got {x}")
    return ceil_upper((pi_enclosure(dps) ** 2 / 6) ** d * xe ** 2)


def rational_ideal_count(x: Union[int, Fraction]) -> int:
    """Ideals (n) of Z with n ≤ x."""
    x = Fraction(x)
    return max(0, x.numerator // x.denominator)


def ramification(field: NumberFieldInvariants, primes: Sequence[PrimeIdeal]) -> RamificationData:
    return RamificationData(degree=field.degree, finite=tuple(sorted(primes)))
