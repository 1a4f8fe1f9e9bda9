"""Partitions, cycle types, hook lengths, class sizes and rim hooks."""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterable, Iterator

from fuchsian_growth.errors import InvalidPartition
from fuchsian_growth.types import CycleType, Partition, RimHookRemoval


# ---------- Enumeration ----------

def _descending(n: int, allowed: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """Partitions of n into parts from ``allowed`` (sorted descending), descending lex."""
    if n == 0:
        yield ()
        return
    for i, first in enumerate(allowed):
        if first > n:
            continue
        for rest in _descending(n - first, allowed[i:]):
            yield (first,) + rest


def iter_partitions(n: int) -> Iterator[Partition]:
    if n < 0:
        raise InvalidPartition(f"cannot partition {n}")
    for parts in _descending(n, tuple(range(n, 0, -1))):
        yield Partition(parts)


@lru_cache(maxsize=128)
def enumerate_partitions(n: int) -> tuple[Partition, ...]:
    """All partitions of n in descending lexicographic order."""
    return tuple(iter_partitions(n))


def cycle_types(n: int) -> tuple[CycleType, ...]:
    return tuple(CycleType(p.parts) for p in enumerate_partitions(n))


def cycle_types_dividing(m: int, n: int) -> Iterator[CycleType]:
    """Cycle types of n whose parts all divide m (π^m = 1), streamed in descending lex order."""
    if m < 1:
        raise InvalidPartition(f"element order {m} must be positive")
    divisors = tuple(d for d in range(min(m, max(n, 1)), 0, -1) if m % d == 0)
    for parts in _descending(n, divisors):
        yield CycleType(parts)


@lru_cache(maxsize=None)
def partition_count(n: int) -> int:
    """p(n) by Euler's pentagonal-number recurrence."""
    if n < 0:
        return 0
    if n == 0:
        return 1
    total = 0
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        if g1 > n:
            break
        g2 = k * (3 * k + 1) // 2
        sign = 1 if k % 2 else -1
        total += sign * (partition_count(n - g1) + partition_count(n - g2))
        k += 1
    return total


# ---------- Shape data ----------

def conjugate(lam: Partition) -> Partition:
    if not lam.parts:
        return lam
    return Partition(tuple(sum(1 for p in lam.parts if p > j) for j in range(lam.parts[0])))


def hook_lengths(lam: Partition) -> list[int]:
    cols = conjugate(lam).parts
    return [
        (row - j) + (cols[j] - i) - 1
        for i, row in enumerate(lam.parts)
        for j in range(row)
    ]


@lru_cache(maxsize=1 << 16)
def degree_of_parts(parts: tuple[int, ...]) -> int:
    lam = Partition(parts)
    n = lam.n
    return math.factorial(n) // math.prod(hook_lengths(lam))


def hook_degree(lam: Partition) -> int:
    """χ_λ(1) = n! / ∏ hook lengths."""
    return degree_of_parts(lam.parts)


def class_size(c: CycleType) -> int:
    """|π^{S_n}| = n! / ∏ m^{a_m} a_m!."""
    denom = 1
    for length, mult in c.multiplicities.items():
        denom *= length ** mult * math.factorial(mult)
    return math.factorial(c.n) // denom


def centralizer_order(c: CycleType) -> int:
    return math.factorial(c.n) // class_size(c)


# ---------- Rim hooks ----------

def _beta_set(parts: tuple[int, ...]) -> list[int]:
    length = len(parts)
    return [p + (length - 1 - i) for i, p in enumerate(parts)]


def _from_beta(beta: Iterable[int]) -> tuple[int, ...]:
    ordered = sorted(beta, reverse=True)
    length = len(ordered)
    parts = (b - (length - 1 - j) for j, b in enumerate(ordered))
    return tuple(p for p in parts if p > 0)


def rim_hook_remainders(parts: tuple[int, ...], r: int) -> Iterator[tuple[tuple[int, ...], int]]:
    """(remainder parts, leg length) for each rim r-hook; no validation, for hot loops."""
    beta = _beta_set(parts)
    present = set(beta)
    for b in beta:
        target = b - r
        if target < 0 or target in present:
            continue
        leg = sum(1 for x in beta if target < x < b)
        yield _from_beta((present - {b}) | {target}), leg


def rim_hooks(lam: Partition, r: int) -> list[RimHookRemoval]:
    """Every removable rim r-hook of λ, top row first, with its leg length."""
    if r < 1:
        raise InvalidPartition(f"rim hook size {r} must be positive")
    return [
        RimHookRemoval(remainder=Partition(rest), leg_length=leg)
        for rest, leg in rim_hook_remainders(lam.parts, r)
    ]


# ---------- Elements of bounded order ----------

@lru_cache(maxsize=None)
def elements_of_order_dividing(m: int, n: int) -> int:
    """#{π ∈ S_n : π^m = 1}."""
    if m < 1 or n < 0:
        raise InvalidPartition(f"need m ≥ 1 and n ≥ 0, got m={m}, n={n}")
    if n == 0:
        return 1
    # The point n lies on a d-cycle, d | m; choose the other d − 1 points in order.
    total = 0
    for d in range(1, min(m, n) + 1):
        if m % d == 0:
            total += math.perm(n - 1, d - 1) * elements_of_order_dividing(m, n - d)
    return total
