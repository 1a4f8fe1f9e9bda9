"""Utility functions: prime powers, exact division, decimal rendering."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Any, Union

from fuchsian_growth.errors import ConsistencyError


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    return all(p % q for q in range(3, math.isqrt(p) + 1, 2))


def is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    p = next(d for d in range(2, q + 1) if q % d == 0)
    while q % p == 0:
        q //= p
    return q == 1 and is_prime(p)


def exact_div(a: int, b: int, error: type[ConsistencyError], what: str, witness: Any = None) -> int:
    """a // b, raising ``error`` when b does not divide a."""
    quotient, remainder = divmod(a, b)
    if remainder:
        raise error(f"{what}: {b} does not divide {a}", witness=witness)
    return quotient


def as_integer(x: Fraction, error: type[ConsistencyError], what: str, witness: Any = None) -> int:
    if x.denominator != 1:
        raise error(f"{what}: {x} is not an integer", witness=witness)
    return x.numerator


def power_of_two_part(k: int) -> int:
    """Largest power of 2 dividing k (k > 0)."""
    return k & -k


def fmt_rational(x: Union[int, Fraction]) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def fmt_decimal(x: Union[int, Fraction], digits: int = 20) -> str:
    """Fixed-point decimal rendering, rounded toward zero."""
    x = Fraction(x)
    sign = "-" if x < 0 else ""
    x = abs(x)
    whole = x.numerator // x.denominator
    frac = x - whole
    scaled = frac.numerator * 10 ** digits // frac.denominator
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{scaled:0{digits}d}"
