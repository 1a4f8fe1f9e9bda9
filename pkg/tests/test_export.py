"""Tests for row builders, writers and the output schema."""

from __future__ import annotations

import json
from fractions import Fraction

import pytest

from fuchsian_growth.census import census
from fuchsian_growth.homs import subgroup_counts
from fuchsian_growth.intervals import Enclosure
from fuchsian_growth.policy import Policy
from fuchsian_growth.types import FuchsianSignature, NumberFieldInvariants, PiMultiple

from growth_lab.config import OutputFormat
from growth_lab.export import (
    CENSUS_COLUMNS,
    COUNT_COLUMNS,
    SchemaError,
    census_rows,
    count_rows,
    from_csv,
    render_covolume,
    render_report,
    render_rows,
    report_rows,
    to_csv,
    validate_rows,
)
from growth_lab.suites import verify_fl


class TestCountRows:
    def test_modular_rows(self, modular: FuchsianSignature) -> None:
        series, counts = subgroup_counts(modular, 5)
        rows = count_rows(series, counts)
        validate_rows("count", rows)
        assert [r["a_n"] for r in rows] == ["1", "1", "4", "8", "5"]
        assert rows[2] == {"n": "3", "h_n": "12", "t_n": "8", "a_n": "4", "s_n": "6"}

    def test_csv_roundtrip(self, modular: FuchsianSignature) -> None:
        rows = count_rows(*subgroup_counts(modular, 6))
        text = to_csv("count", rows)
        assert text.splitlines()[0] == ",".join(COUNT_COLUMNS)
        assert from_csv(text) == rows

    def test_json(self, modular: FuchsianSignature) -> None:
        rows = count_rows(*subgroup_counts(modular, 4))
        assert json.loads(render_rows("count", rows, OutputFormat.JSON)) == rows

    def test_table(self, modular: FuchsianSignature) -> None:
        text = render_rows("count", count_rows(*subgroup_counts(modular, 4)), OutputFormat.TABLE)
        lines = text.splitlines()
        assert lines[0].split() == list(COUNT_COLUMNS)
        assert len(lines) == 5


class TestCensusRows:
    def test_rows(self, field_table: tuple[NumberFieldInvariants, ...], policy: Policy) -> None:
        rows = census_rows(census(field_table, PiMultiple(1), policy=policy))
        validate_rows("census", rows)
        first = rows[0]
        assert set(first) == set(CENSUS_COLUMNS)
        q_row = next(r for r in rows if r["field"] == "Q" and r["ram"] == "" and r["s_set"] == "")
        assert q_row["covolume_low"] == "1/3*pi"
        assert q_row["uniform"] == "no"
        assert q_row["bracket"] == "exact:1"

    def test_render_covolume(self) -> None:
        assert render_covolume(PiMultiple(Fraction(2, 3))) == "2/3*pi"
        assert render_covolume(Enclosure(1, 2), digits=2) == "[1.00, 2.00]"


class TestReportRows:
    def test_rows_and_csv(self, policy: Policy) -> None:
        report = verify_fl(8, policy=policy)
        rows = report_rows(report)
        validate_rows("report", rows)
        assert rows[0]["bound"] == "fl"
        assert rows[0]["params"] == "n=2;m=2"
        csv_text = render_report(report, OutputFormat.CSV)
        assert from_csv(csv_text) == rows

    def test_json_and_table(self, policy: Policy) -> None:
        report = verify_fl(6, policy=policy)
        assert json.loads(render_report(report, OutputFormat.JSON))["all_pass"] is True
        assert render_report(report, OutputFormat.TABLE).endswith("all exact checks pass\n")


class TestSchema:
    def test_negative_count(self) -> None:
        row = {"n": "1", "h_n": "1", "t_n": "-1", "a_n": "1", "s_n": "1"}
        with pytest.raises(SchemaError) as info:
            validate_rows("count", [row])
        assert (info.value.row, info.value.column) == (1, "t_n")

    def test_missing_column(self) -> None:
        with pytest.raises(SchemaError):
            validate_rows("count", [{"n": "1"}])

    def test_bad_covolume(self) -> None:
        row = {
            "field": "Q", "ram": "", "s_set": "", "m_min": "0", "m_max": "0", "bracket": "exact:1",
            "uniform": "no", "covolume_low": "1.047", "covolume_high": "1/3*pi",
        }
        with pytest.raises(SchemaError) as info:
            validate_rows("census", [row])
        assert info.value.column == "covolume_low"

    def test_bad_status(self) -> None:
        row = {"bound": "fl", "params": "n=2", "status": "maybe", "value": "", "witness": ""}
        with pytest.raises(SchemaError):
            validate_rows("report", [row])

    def test_unknown_kind(self) -> None:
        with pytest.raises(ValueError):
            validate_rows("other", [])
