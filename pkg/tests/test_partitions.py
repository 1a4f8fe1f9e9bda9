"""Tests for partition enumeration, hook degrees, class sizes and rim hooks."""

from __future__ import annotations

import math

import pytest

from fuchsian_growth.errors import InvalidPartition
from fuchsian_growth.partitions import (
    centralizer_order,
    class_size,
    conjugate,
    cycle_types,
    cycle_types_dividing,
    elements_of_order_dividing,
    enumerate_partitions,
    hook_degree,
    hook_lengths,
    partition_count,
    rim_hooks,
)
from fuchsian_growth.types import CycleType, Partition

from tests.oracles import all_perms, border_strips, identity, power


class TestEnumeration:
    def test_canonical_order(self) -> None:
        assert [p.parts for p in enumerate_partitions(4)] == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]

    def test_empty_partition(self) -> None:
        assert enumerate_partitions(0) == (Partition(()),)

    @pytest.mark.parametrize("n, count", [(0, 1), (1, 1), (5, 7), (10, 42), (20, 627), (100, 190569292)])
    def test_partition_count(self, n: int, count: int) -> None:
        assert partition_count(n) == count

    def test_count_matches_enumeration(self) -> None:
        for n in range(15):
            assert len(enumerate_partitions(n)) == partition_count(n)

    def test_cycle_types_dividing(self) -> None:
        assert [c.parts for c in cycle_types_dividing(2, 4)] == [(2, 2), (2, 1, 1), (1, 1, 1, 1)]

    def test_cycle_types_dividing_prime_above_n(self) -> None:
        assert [c.parts for c in cycle_types_dividing(7, 5)] == [(1, 1, 1, 1, 1)]

    def test_invalid_parts_rejected(self) -> None:
        with pytest.raises(InvalidPartition):
            Partition((1, 2))
        with pytest.raises(InvalidPartition):
            Partition((2, 0))


class TestHookDegree:
    @pytest.mark.parametrize(
        "parts, degree",
        [((2, 1), 2), ((2, 2), 2), ((3, 2), 5), ((4, 2), 9), ((3, 2, 1), 16), ((5,), 1), ((1, 1, 1), 1)],
    )
    def test_known_degrees(self, parts: tuple[int, ...], degree: int) -> None:
        assert hook_degree(Partition(parts)) == degree

    def test_hook_lengths_staircase(self) -> None:
        assert sorted(hook_lengths(Partition((3, 2, 1)))) == [1, 1, 1, 3, 3, 5]

    def test_sum_of_squares_is_group_order(self) -> None:
        for n in range(1, 11):
            assert sum(hook_degree(lam) ** 2 for lam in enumerate_partitions(n)) == math.factorial(n)

    def test_conjugate(self) -> None:
        assert conjugate(Partition((3, 1))) == Partition((2, 1, 1))
        for lam in enumerate_partitions(7):
            assert conjugate(conjugate(lam)) == lam
            assert hook_degree(conjugate(lam)) == hook_degree(lam)


class TestClassSize:
    def test_small_classes(self) -> None:
        assert class_size(CycleType((2, 1))) == 3
        assert class_size(CycleType((3,))) == 2
        assert class_size(CycleType((2, 2))) == 3
        assert class_size(CycleType.identity(6)) == 1

    def test_centralizer(self) -> None:
        assert centralizer_order(CycleType((2, 2))) == 8

    def test_class_sizes_sum_to_factorial(self) -> None:
        for n in range(1, 21):
            assert sum(class_size(c) for c in cycle_types(n)) == math.factorial(n)

    @pytest.mark.parametrize("m, n, count", [(2, 3, 4), (3, 3, 3), (2, 4, 10), (2, 5, 26), (3, 5, 21)])
    def test_elements_of_order_dividing(self, m: int, n: int, count: int) -> None:
        assert elements_of_order_dividing(m, n) == count

    def test_elements_of_order_dividing_by_enumeration(self) -> None:
        for n in range(1, 7):
            perms = all_perms(n)
            for m in range(1, 7):
                expected = sum(1 for p in perms if power(p, m) == identity(n))
                assert elements_of_order_dividing(m, n) == expected


class TestRimHooks:
    def test_no_two_hook_in_21(self) -> None:
        assert rim_hooks(Partition((2, 1)), 2) == []

    def test_row_and_column(self) -> None:
        [row] = rim_hooks(Partition((3,)), 2)
        assert row.remainder == Partition((1,)) and row.leg_length == 0
        [col] = rim_hooks(Partition((1, 1, 1)), 2)
        assert col.remainder == Partition((1,)) and col.leg_length == 1

    def test_whole_diagram_hook(self) -> None:
        [hook] = rim_hooks(Partition((3, 1, 1)), 5)
        assert hook.remainder == Partition(()) and hook.leg_length == 2

    def test_matches_border_strip_geometry(self) -> None:
        for n in range(1, 9):
            for lam in enumerate_partitions(n):
                for r in range(1, n + 1):
                    found = {(h.remainder.parts, h.leg_length) for h in rim_hooks(lam, r)}
                    assert found == border_strips(lam.parts, r), (lam, r)

    @pytest.mark.slow
    def test_hook_count_bound(self) -> None:
        for n in range(1, 31):
            for lam in enumerate_partitions(n):
                for r in range(1, n + 1):
                    assert len(rim_hooks(lam, r)) ** 2 <= 2 * n

    def test_nonpositive_length_rejected(self) -> None:
        with pytest.raises(InvalidPartition):
            rim_hooks(Partition((2, 1)), 0)
