"""Tests for Borel covolumes, S-set growth and the candidate bounds."""

from __future__ import annotations

from fractions import Fraction

import pytest

from fuchsian_growth.borel import (
    SIEGEL_FLOOR,
    as_interval_field,
    bracket_upper,
    cf_lower_bound,
    class_number_bound,
    degree_bound,
    discriminant_bound,
    formula_range,
    gamma_S_covolume,
    ideal_count_bound,
    is_uniform,
    kronecker,
    min_covolume,
    min_covolume_range,
    quadratic_zeta2_enclosure,
    rational_ideal_count,
    ramification,
    s_set_budget_ok,
    type_number_bound,
    zeta2_enclosure,
)
from fuchsian_growth.errors import InvalidBracket, InvalidM, ParityViolation
from fuchsian_growth.intervals import Enclosure, exp_enclosure
from fuchsian_growth.types import (
    BracketValue,
    NumberFieldInvariants,
    PiMultiple,
    PrimeIdeal,
    RamificationData,
)

EXACT_ONE = BracketValue(1)


def _primes(field: NumberFieldInvariants, *labels: str) -> tuple[PrimeIdeal, ...]:
    by_label = {p.label: p for p in field.primes}
    return tuple(by_label[label] for label in labels)


class TestMinCovolume:
    def test_modular_group(self, rationals: NumberFieldInvariants) -> None:
        ram = ramification(rationals, ())
        assert min_covolume(rationals, ram, EXACT_ONE) == PiMultiple(Fraction(1, 3))

    def test_rational_division_algebra(self, rationals: NumberFieldInvariants) -> None:
        ram = ramification(rationals, _primes(rationals, "2", "3"))
        assert min_covolume(rationals, ram, EXACT_ONE) == PiMultiple(Fraction(2, 3))

    def test_parity(self, rationals: NumberFieldInvariants) -> None:
        with pytest.raises(ParityViolation):
            min_covolume(rationals, ramification(rationals, _primes(rationals, "2")), EXACT_ONE)

    def test_degree_mismatch(self, rationals: NumberFieldInvariants) -> None:
        with pytest.raises(ParityViolation):
            min_covolume(rationals, RamificationData(degree=2), EXACT_ONE)

    def test_bracket_range(self, rationals: NumberFieldInvariants) -> None:
        ram = ramification(rationals, ())
        assert bracket_upper(rationals, ram) == 2
        with pytest.raises(InvalidBracket):
            min_covolume(rationals, ram, BracketValue(3))
        assert min_covolume(rationals, ram, BracketValue(2)) == PiMultiple(Fraction(1, 6))

    def test_interval_bracket(self, rationals: NumberFieldInvariants) -> None:
        rng = min_covolume_range(rationals, ramification(rationals, ()), BracketValue(None))
        assert (rng.low, rng.high) == (PiMultiple(Fraction(1, 6)), PiMultiple(Fraction(1, 3)))
        assert rng.exact is None
        enclosure = min_covolume(rationals, ramification(rationals, ()), BracketValue(None))
        assert isinstance(enclosure, Enclosure)
        assert enclosure.contains(Fraction(1, 2)) and enclosure.contains(1)

    @pytest.mark.parametrize(
        "labels, expected",
        [((), Fraction(1, 15)), (("2",), Fraction(1, 5)), (("sqrt5",), Fraction(4, 15))],
    )
    def test_golden_field_formula(self, sqrt5: NumberFieldInvariants, labels: tuple[str, ...], expected: Fraction) -> None:
        rng = formula_range(sqrt5, ramification(sqrt5, _primes(sqrt5, *labels)), EXACT_ONE)
        assert rng.exact == PiMultiple(expected)

    def test_golden_field_parity(self, sqrt5: NumberFieldInvariants) -> None:
        assert min_covolume(sqrt5, ramification(sqrt5, _primes(sqrt5, "2")), EXACT_ONE) == PiMultiple(Fraction(1, 5))
        with pytest.raises(ParityViolation):
            min_covolume(sqrt5, ramification(sqrt5, ()), EXACT_ONE)

    def test_interval_zeta_field(self, rationals: NumberFieldInvariants) -> None:
        interval_q = as_interval_field(rationals)
        value = min_covolume(interval_q, ramification(interval_q, ()), EXACT_ONE)
        assert isinstance(value, Enclosure)
        assert value.certainly_le(PiMultiple(Fraction(1, 3)).enclosure() + Fraction(1, 10 ** 30))
        assert PiMultiple(Fraction(1, 3)).enclosure().certainly_le(value + Fraction(1, 10 ** 30))

    def test_siegel_floor(self, rationals: NumberFieldInvariants) -> None:
        covol = min_covolume(rationals, ramification(rationals, ()), EXACT_ONE)
        assert isinstance(covol, PiMultiple)
        assert covol >= SIEGEL_FLOOR

    def test_uniformity(self, rationals: NumberFieldInvariants, sqrt5: NumberFieldInvariants) -> None:
        assert not is_uniform(rationals, ramification(rationals, ()))
        assert is_uniform(rationals, ramification(rationals, _primes(rationals, "2", "3")))
        assert is_uniform(sqrt5, ramification(sqrt5, _primes(sqrt5, "2")))


class TestSSets:
    def test_growth(self) -> None:
        base = PiMultiple(Fraction(1, 3))
        assert gamma_S_covolume(base, [5], 0) == PiMultiple(2)
        assert gamma_S_covolume(base, [5], 1) == PiMultiple(1)

    def test_enclosure_base(self) -> None:
        base = Enclosure(1, 2)
        assert gamma_S_covolume(base, [2, 3], 2) == Enclosure(3, 6)

    def test_m_range(self) -> None:
        with pytest.raises(InvalidM):
            gamma_S_covolume(PiMultiple(1), [5], 2)
        with pytest.raises(InvalidM):
            gamma_S_covolume(PiMultiple(1), [5], -1)

    def test_budget_check(self) -> None:
        assert s_set_budget_ok([5], PiMultiple(Fraction(1, 3)))
        assert not s_set_budget_ok([5], SIEGEL_FLOOR)
        assert s_set_budget_ok([5], 1)
        assert not s_set_budget_ok([5, 7, 11], Fraction(1, 10))


class TestZeta:
    def test_kronecker(self) -> None:
        assert [kronecker(5, n) for n in range(1, 6)] == [1, -1, -1, 1, 0]
        assert kronecker(8, 3) == -1
        with pytest.raises(ValueError):
            kronecker(5, 0)

    def test_quadratic_series_brackets_exact_value(self, sqrt5: NumberFieldInvariants) -> None:
        series = quadratic_zeta2_enclosure(5, terms=2000)
        exact = zeta2_enclosure(sqrt5)
        assert series.lo <= exact.hi and exact.lo <= series.hi
        assert series.width < Fraction(1, 500)

    def test_rational_zeta(self, rationals: NumberFieldInvariants) -> None:
        assert abs(float(zeta2_enclosure(rationals).mid) - 1.6449340668482264) < 1e-15

    def test_bad_discriminant(self) -> None:
        with pytest.raises(ValueError):
            quadratic_zeta2_enclosure(1)

    def test_type_number(self, rationals: NumberFieldInvariants, sqrt5: NumberFieldInvariants) -> None:
        assert type_number_bound(rationals) == 1
        assert type_number_bound(sqrt5) == 2


class TestCandidateBounds:
    @pytest.mark.parametrize(
        "d, h, expected",
        [(1, 1, 5.17e-9), (60, 1, 15.6), (60, 20, 1.16e9)],
    )
    def test_chinburg_friedman(self, d: int, h: int, expected: float) -> None:
        assert float(cf_lower_bound(d, h).mid) == pytest.approx(expected, rel=1e-2)

    def test_chinburg_friedman_rejects_zero(self) -> None:
        with pytest.raises(ValueError):
            cf_lower_bound(0, 1)

    def test_degree_bound(self) -> None:
        assert degree_bound(1) == 21
        assert degree_bound(exp_enclosure(7)) == 42
        assert degree_bound(10 ** 6) == 62
        with pytest.raises(ValueError):
            degree_bound(Fraction(1, 2))

    def test_discriminant_bound_grows(self) -> None:
        small = discriminant_bound(1, 2)
        large = discriminant_bound(10, 2)
        assert 0 < small < large
        assert discriminant_bound(PiMultiple(Fraction(1, 3)), 1) > 1

    @pytest.mark.parametrize("d, disc, expected", [(1, 1, 26), (2, 5, 34)])
    def test_class_number_bound(self, d: int, disc: int, expected: int) -> None:
        assert class_number_bound(d, disc) == expected

    def test_ideal_counts(self, rationals: NumberFieldInvariants) -> None:
        assert ideal_count_bound(1, 10) == 165
        assert ideal_count_bound(2, 10) == 271
        assert ideal_count_bound(rationals, 10) == 165
        assert rational_ideal_count(10) == 10
        assert rational_ideal_count(Fraction(21, 2)) == 10
        assert rational_ideal_count(10) <= ideal_count_bound(1, 10)
