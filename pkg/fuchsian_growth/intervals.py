"""Certified real enclosures with exact rational endpoints.

Arithmetic between enclosures is exact (``Fraction`` endpoints). Transcendental
functions (π, e, exp, log, fractional powers) are evaluated with
``mpmath.iv``, whose outward rounding guarantees that the true value lies
inside the returned interval; the endpoints are then read back exactly.
"""

from __future__ import annotations

import threading
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Iterator, Union

from mpmath import iv, libmp

DEFAULT_DPS = 40

Rational = Union[int, Fraction]

_PRECISION_LOCK = threading.RLock()


@dataclass(frozen=True)
class Enclosure:
    """Closed interval [lo, hi] known to contain some real number."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty enclosure [{self.lo}, {self.hi}]")

    @staticmethod
    def point(x: Rational) -> Enclosure:
        return Enclosure(Fraction(x), Fraction(x))

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x: Rational) -> bool:
        return self.lo <= x <= self.hi

    def certainly_le(self, other: Union[Enclosure, Rational]) -> bool:
        return self.hi <= _lift(other).lo

    def certainly_lt(self, other: Union[Enclosure, Rational]) -> bool:
        return self.hi < _lift(other).lo

    def possibly_le(self, other: Union[Enclosure, Rational]) -> bool:
        return self.lo <= _lift(other).hi

    def __add__(self, other: Union[Enclosure, Rational]) -> Enclosure:
        o = _lift(other)
        return Enclosure(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self) -> Enclosure:
        return Enclosure(-self.hi, -self.lo)

    def __sub__(self, other: Union[Enclosure, Rational]) -> Enclosure:
        return self + (-_lift(other))

    def __rsub__(self, other: Rational) -> Enclosure:
        return _lift(other) - self

    def __mul__(self, other: Union[Enclosure, Rational]) -> Enclosure:
        o = _lift(other)
        products = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Enclosure(min(products), max(products))

    __rmul__ = __mul__

    def __truediv__(self, other: Union[Enclosure, Rational]) -> Enclosure:
        o = _lift(other)
        if o.lo <= 0 <= o.hi:
            raise ZeroDivisionError("divisor enclosure contains zero")
        return self * Enclosure(1 / o.hi, 1 / o.lo)

    def __rtruediv__(self, other: Rational) -> Enclosure:
        return _lift(other) / self

    def __pow__(self, k: int) -> Enclosure:
        if not isinstance(k, int) or k < 0:
            return power_enclosure(self, Fraction(k))
        if k == 0:
            return Enclosure.point(1)
        if self.lo >= 0:
            return Enclosure(self.lo ** k, self.hi ** k)
        if self.hi <= 0:
            a, b = (-self.hi) ** k, (-self.lo) ** k
            return Enclosure(a, b) if k % 2 == 0 else Enclosure(-b, -a)
        if k % 2 == 1:
            return Enclosure(self.lo ** k, self.hi ** k)
        return Enclosure(0, max(self.lo ** k, self.hi ** k))

    def __str__(self) -> str:
        return f"[{float(self.lo):.17g}, {float(self.hi):.17g}]"


def _lift(x: Union[Enclosure, Rational]) -> Enclosure:
    if isinstance(x, Enclosure):
        return x
    return Enclosure.point(x)


# ---------- mpmath bridge ----------

@contextmanager
def working_precision(dps: int) -> Iterator[None]:
    """Temporarily set ``iv.dps``; serialised because mpmath precision is global."""
    with _PRECISION_LOCK:
        saved = iv.dps
        iv.dps = dps
        try:
            yield
        finally:
            iv.dps = saved


def _raw_to_fraction(raw: Any) -> Fraction:
    sign, man, exp, _bc = raw
    if not man:
        if raw == libmp.fzero:
            return Fraction(0)
        raise ArithmeticError("interval endpoint is not finite")
    value = Fraction(int(man)) * Fraction(2) ** int(exp)
    return -value if sign else value


def _from_iv(v: Any) -> Enclosure:
    a, b = v._mpi_
    return Enclosure(_raw_to_fraction(a), _raw_to_fraction(b))


def _to_iv(x: Enclosure) -> Any:
    lo = iv.mpf(x.lo.numerator) / x.lo.denominator
    hi = iv.mpf(x.hi.numerator) / x.hi.denominator
    return iv.mpf([lo, hi])


@lru_cache(maxsize=None)
def pi_enclosure(dps: int = DEFAULT_DPS) -> Enclosure:
    with working_precision(dps):
        return _from_iv(+iv.pi)


@lru_cache(maxsize=None)
def e_enclosure(dps: int = DEFAULT_DPS) -> Enclosure:
    with working_precision(dps):
        return _from_iv(iv.exp(iv.mpf(1)))


def exp_enclosure(x: Union[Enclosure, Rational], dps: int = DEFAULT_DPS) -> Enclosure:
    x = _lift(x)
    with working_precision(dps):
        return _from_iv(iv.exp(_to_iv(x)))


def log_enclosure(x: Union[Enclosure, Rational], dps: int = DEFAULT_DPS) -> Enclosure:
    x = _lift(x)
    if x.lo <= 0:
        raise ValueError("log of an enclosure reaching non-positive values")
    if x.lo == x.hi == 1:
        return Enclosure.point(0)
    with working_precision(dps):
        return _from_iv(iv.log(_to_iv(x)))


def power_enclosure(
    x: Union[Enclosure, Rational],
    exponent: Rational,
    dps: int = DEFAULT_DPS,
) -> Enclosure:
    """x ** exponent for x > 0 (or any x when the exponent is a non-negative integer)."""
    x = _lift(x)
    exponent = Fraction(exponent)
    if exponent.denominator == 1 and exponent >= 0:
        return x ** int(exponent)
    if x.lo <= 0:
        raise ValueError("fractional power of an enclosure reaching non-positive values")
    if x.lo == x.hi == 1:
        return Enclosure.point(1)
    return exp_enclosure(log_enclosure(x, dps) * exponent, dps)


def floor_certified(x: Enclosure) -> tuple[int, int]:
    """(⌊lo⌋, ⌊hi⌋); equal when the floor is decided."""
    return (x.lo.numerator // x.lo.denominator, x.hi.numerator // x.hi.denominator)


def ceil_upper(x: Enclosure) -> int:
    """Smallest integer ≥ every point of the enclosure."""
    return -((-x.hi.numerator) // x.hi.denominator)
