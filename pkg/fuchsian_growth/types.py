"""Core types and dataclasses for fuchsian-growth."""

from __future__ import annotations

import enum
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterator, NewType, Optional, Union

from fuchsian_growth.errors import InvalidPartition, InvalidPrimeIdeal, InvalidSignature
from fuchsian_growth.intervals import DEFAULT_DPS, Enclosure, pi_enclosure


# ---------- ID types ----------

FieldLabel = NewType("FieldLabel", str)


# ---------- Enums ----------

class BracketMode(enum.Enum):
    EXACT = "exact"
    INTERVAL = "interval"


class HomSeriesMode(enum.Enum):
    FACTORED = "factored"
    CLASS_VECTORS = "class_vectors"


# ---------- Partitions ----------

@dataclass(frozen=True)
class Partition:
    """Weakly decreasing positive parts; indexes characters and classes of S_n."""

    parts: tuple[int, ...]
    n: int = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        parts = tuple(int(p) for p in self.parts)
        for i, p in enumerate(parts):
            if p < 1:
                raise InvalidPartition(f"part {p} at index {i} is not positive")
            if i and parts[i - 1] < p:
                raise InvalidPartition(f"parts {parts} are not weakly decreasing")
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "n", sum(parts))

    @classmethod
    def of(cls, *parts: int) -> Partition:
        return cls(tuple(parts))

    @classmethod
    def sorted_from(cls, parts: Any) -> Partition:
        return cls(tuple(sorted((int(p) for p in parts), reverse=True)))

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(str(p) for p in self.parts) + ")"


@dataclass(frozen=True)
class CycleType(Partition):
    """Cycle lengths of a permutation, viewed as a partition of n."""

    @property
    def multiplicities(self) -> dict[int, int]:
        """{cycle length → multiplicity}, longest cycles first."""
        return dict(sorted(Counter(self.parts).items(), reverse=True))

    @property
    def order(self) -> int:
        return math.lcm(*self.parts) if self.parts else 1

    @property
    def sign(self) -> int:
        return -1 if (self.n - len(self.parts)) % 2 else 1

    def parts_divide(self, m: int) -> bool:
        return all(m % p == 0 for p in self.parts)

    @classmethod
    def identity(cls, n: int) -> CycleType:
        return cls((1,) * n)

    @classmethod
    def uniform(cls, m: int, n: int) -> CycleType:
        """The class (m^{n/m}) of fixed-point-free elements of order m."""
        if n % m:
            raise InvalidPartition(f"{m} does not divide {n}")
        return cls((m,) * (n // m))


@dataclass(frozen=True)
class RimHookRemoval:
    remainder: Partition
    leg_length: int


@dataclass(frozen=True)
class CharacterQuery:
    lam: Partition
    cycles: CycleType

    def __post_init__(self) -> None:
        if self.lam.n != self.cycles.n:
            raise InvalidPartition(
                f"character {self.lam} of S_{self.lam.n} evaluated on class {self.cycles} of S_{self.cycles.n}"
            )


# ---------- Fuchsian signatures ----------

@dataclass(frozen=True)
class FuchsianSignature:
    """(orientability; genus; periods; cusps; boundary components)."""

    oriented: bool = True
    genus: int = 0
    periods: tuple[int, ...] = ()
    cusps: int = 0
    boundary: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "periods", tuple(int(m) for m in self.periods))
        if self.genus < 0 or self.cusps < 0 or self.boundary < 0:
            raise InvalidSignature("genus, cusps and boundary must be non-negative")
        if not self.oriented and self.genus < 1:
            raise InvalidSignature("non-oriented signatures need genus ≥ 1")
        for m in self.periods:
            if m < 2:
                raise InvalidSignature(f"period {m} is below 2")

    @property
    def mu(self) -> Fraction:
        from fuchsian_growth.signature import mu
        return mu(self)

    @property
    def is_fuchsian(self) -> bool:
        return self.mu > 0

    @property
    def d(self) -> int:
        return len(self.periods)

    def __str__(self) -> str:
        from fuchsian_growth.signature import format_signature
        return format_signature(self)


@dataclass(frozen=True, order=True)
class PiMultiple:
    """The real number coefficient·π, kept exact."""

    coefficient: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "coefficient", Fraction(self.coefficient))

    def scale(self, factor: Union[int, Fraction]) -> PiMultiple:
        return PiMultiple(self.coefficient * factor)

    def enclosure(self, dps: int = DEFAULT_DPS) -> Enclosure:
        return pi_enclosure(dps) * self.coefficient

    def __str__(self) -> str:
        return f"{self.coefficient}*pi"


RealValue = Union[int, Fraction, PiMultiple, Enclosure]


def as_enclosure(x: RealValue, dps: int = DEFAULT_DPS) -> Enclosure:
    if isinstance(x, Enclosure):
        return x
    if isinstance(x, PiMultiple):
        return x.enclosure(dps)
    return Enclosure.point(Fraction(x))


# ---------- Homomorphism counting ----------

@dataclass(frozen=True)
class ClassVector:
    """One conjugacy class of S_n per elliptic generator."""

    classes: tuple[CycleType, ...]

    @property
    def n(self) -> Optional[int]:
        return self.classes[0].n if self.classes else None


@dataclass(frozen=True)
class HomCountSeries:
    """h_0..h_N with h_n = |Hom(Γ, S_n)|, h_0 = 1."""

    signature: FuchsianSignature
    values: tuple[int, ...]
    pinned: bool = False  # elliptic images restricted to full cycles

    @property
    def N(self) -> int:
        return len(self.values) - 1


@dataclass(frozen=True)
class SubgroupCounts:
    """Index-n data for n = 1..N; position k holds index k + 1."""

    signature: FuchsianSignature
    t: tuple[int, ...]
    a: tuple[int, ...]
    s: tuple[int, ...]

    def a_n(self, n: int) -> int:
        return self.a[n - 1]

    def s_n(self, n: int) -> int:
        return self.s[n - 1]

    def t_n(self, n: int) -> int:
        return self.t[n - 1]


@dataclass(frozen=True)
class SurfaceCount:
    signature: FuchsianSignature
    genus: int
    index: int
    count: Optional[int]  # None: skipped over the partition budget

    @property
    def skipped(self) -> bool:
        return self.count is None


# ---------- Number fields and quaternion data ----------

@dataclass(frozen=True)
class ExactZeta2:
    """ζ_k(2) = q·π^{2d}/√Δ."""

    q: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "q", Fraction(self.q))
        if self.q <= 0:
            raise ValueError("zeta2 coefficient must be positive")


@dataclass(frozen=True)
class IntervalZeta2:
    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if not 1 < self.lo <= self.hi:
            raise ValueError("zeta2 interval must satisfy 1 < lo ≤ hi")


Zeta2 = Union[ExactZeta2, IntervalZeta2]


@dataclass(frozen=True, order=True)
class PrimeIdeal:
    norm: int
    label: str

    def __post_init__(self) -> None:
        from fuchsian_growth.helpers import is_prime_power
        if not is_prime_power(self.norm):
            raise InvalidPrimeIdeal(f"prime ideal {self.label!r} has norm {self.norm}, not a prime power")


@dataclass(frozen=True)
class NumberFieldInvariants:
    label: FieldLabel
    degree: int
    discriminant: int
    zeta2: Zeta2
    class_number: int
    primes: tuple[PrimeIdeal, ...] = ()

    def __post_init__(self) -> None:
        if self.degree < 1 or self.discriminant < 1 or self.class_number < 1:
            raise ValueError(f"field {self.label}: degree, discriminant and class number must be positive")
        if self.degree == 1:
            if self.discriminant != 1 or self.class_number != 1:
                raise ValueError("the rational field has Δ = 1 and h = 1")
            if isinstance(self.zeta2, ExactZeta2) and self.zeta2.q != Fraction(1, 6):
                raise ValueError("ζ(2) = π²/6 over the rationals")
        object.__setattr__(self, "primes", tuple(sorted(self.primes)))


@dataclass(frozen=True)
class RamificationData:
    """Finite ramified primes; the d − 1 ramified real places are implied."""

    degree: int
    finite: tuple[PrimeIdeal, ...] = ()

    @property
    def ram_size(self) -> int:
        return self.degree - 1 + len(self.finite)

    @property
    def parity_ok(self) -> bool:
        return self.ram_size % 2 == 0

    @property
    def norms(self) -> tuple[int, ...]:
        return tuple(p.norm for p in self.finite)


@dataclass(frozen=True)
class BracketValue:
    """The unit/ideal index product; ``exact=None`` means only the a-priori range is known."""

    exact: Optional[int] = None

    @property
    def mode(self) -> BracketMode:
        return BracketMode.INTERVAL if self.exact is None else BracketMode.EXACT

    def describe(self) -> str:
        return self.mode.value if self.exact is None else f"{self.mode.value}:{self.exact}"


Covolume = Union[PiMultiple, Enclosure]


@dataclass(frozen=True)
class CovolumeRange:
    """Certified range for a covolume whose bracket or ζ value is not pinned."""

    low: Covolume
    high: Covolume

    def low_enclosure(self, dps: int = DEFAULT_DPS) -> Enclosure:
        return as_enclosure(self.low, dps)

    def high_enclosure(self, dps: int = DEFAULT_DPS) -> Enclosure:
        return as_enclosure(self.high, dps)

    @property
    def exact(self) -> Optional[PiMultiple]:
        if isinstance(self.low, PiMultiple) and self.low == self.high:
            return self.low
        return None


@dataclass(frozen=True)
class CensusCandidate:
    field_label: FieldLabel
    ramification: tuple[PrimeIdeal, ...]
    s_set: tuple[PrimeIdeal, ...]
    covolume: CovolumeRange
    bracket: str
    uniform: bool = True

    @property
    def m_range(self) -> tuple[int, int]:
        return (0, len(self.s_set))


# ---------- Trace records ----------

@dataclass(frozen=True)
class StageRecord:
    stage: str
    n: Optional[int]
    elapsed: float
    details: dict[str, Any] = field(default_factory=dict)
