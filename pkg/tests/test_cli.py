"""Tests for the fuchsian-growth command line."""

from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Optional

import pytest

from fuchsian_growth.cache import CACHE_HEADER, CharacterCache
from fuchsian_growth.fields import TABLE_HEADER
from fuchsian_growth.policy import Policy

from growth_lab.cli import EXIT_BOUND_FAILURE, EXIT_COMPUTATION, EXIT_OK, EXIT_USAGE, main
from growth_lab.export import from_csv
from growth_lab.reports import BoundReport, PointStatus, ReportPoint
from growth_lab.suites import SUITES, SuiteParams


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch: pytest.MonkeyPatch) -> None:
    for name in list(os.environ):
        if name.startswith("FUCHSIAN_GROWTH_"):
            monkeypatch.delenv(name)


class TestCount:
    def test_csv(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert main(["count", "(2,3,inf)", "--n", "5", "--format", "csv", "--threads", "1"]) == EXIT_OK
        rows = from_csv(capsys.readouterr().out)
        assert [r["a_n"] for r in rows] == ["1", "1", "4", "8", "5"]

    def test_class_vector_mode(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert main(["count", "g=2", "--n", "3", "--mode", "class_vectors", "--format", "json"]) == EXIT_OK
        rows = json.loads(capsys.readouterr().out)
        assert [r["h_n"] for r in rows] == ["1", "16", "486"]

    def test_bad_signature(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert main(["count", "(1,3)", "--n", "3"]) == EXIT_USAGE
        assert "error:" in capsys.readouterr().err

    def test_missing_n(self) -> None:
        with pytest.raises(SystemExit) as info:
            main(["count", "(2,3,7)"])
        assert info.value.code == EXIT_USAGE

    def test_environment_format(self, capsys: pytest.CaptureFixture[str], monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setenv("FUCHSIAN_GROWTH_FORMAT", "csv")
        assert main(["count", "(inf,inf,inf)", "--n", "3"]) == EXIT_OK
        assert capsys.readouterr().out.startswith("n,h_n,t_n,a_n,s_n")

    def test_low_precision_rejected(self) -> None:
        assert main(["count", "g=2", "--n", "2", "--precision", "8"]) == EXIT_USAGE


class TestCharacter:
    def test_value(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert main(["character", "2,1", "3"]) == EXIT_OK
        assert capsys.readouterr().out == "-1\n"

    def test_unsorted_cycles(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert main(["character", "3,1", "1,2,1", "--format", "json"]) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["value"] == "1"

    def test_size_mismatch(self) -> None:
        assert main(["character", "2,1", "2,2"]) == EXIT_USAGE

    def test_not_a_partition(self) -> None:
        assert main(["character", "1,2", "3"]) == EXIT_USAGE


class TestCensus:
    def test_modular_row(self, capsys: pytest.CaptureFixture[str], tmp_path: Path) -> None:
        table = tmp_path / "q.csv"
        table.write_text(
            f"{TABLE_HEADER}\nlabel,degree,disc,zeta2_form,zeta2_value,class_number,primes\nQ,1,1,exact,1/6,1,2:2;3:3\n",
            encoding="utf-8",
        )
        assert main(["census", "--budget", "pi/3", "--table", str(table), "--format", "csv"]) == EXIT_OK
        rows = from_csv(capsys.readouterr().out)
        assert [(r["field"], r["ram"], r["covolume_low"]) for r in rows] == [("Q", "", "1/3*pi")]

    def test_below_siegel_floor(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert main(["census", "--budget", "pi/50", "--format", "csv"]) == EXIT_OK
        captured = capsys.readouterr()
        assert "below π/42" in captured.err
        assert from_csv(captured.out) == []

    def test_interval_bracket(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert main(["census", "--budget", "pi/6", "--bracket", "interval", "--format", "json"]) == EXIT_OK
        rows = json.loads(capsys.readouterr().out)
        assert rows and all(r["bracket"] == "interval" for r in rows)

    def test_bad_budget(self) -> None:
        assert main(["census", "--budget", "lots"]) == EXIT_USAGE

    def test_bad_bracket(self) -> None:
        assert main(["census", "--budget", "pi", "--bracket", "0"]) == EXIT_USAGE

    def test_missing_table(self, tmp_path: Path) -> None:
        assert main(["census", "--budget", "pi", "--table", str(tmp_path / "absent.csv")]) == EXIT_COMPUTATION


def _failing_suite(params: SuiteParams, cache: Optional[CharacterCache], policy: Policy) -> BoundReport:
    point = ReportPoint((("n", params.n_max),), PointStatus.EXACT_FAIL, 2, "forced")
    return BoundReport(bound="failing", grid=(), points=(point,))


class TestVerify:
    def test_fomin_lulov(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert main(["verify", "fl", "20"]) == EXIT_OK
        assert capsys.readouterr().out.endswith("all exact checks pass\n")

    def test_failure_exit_code(self, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setitem(SUITES, "failing", _failing_suite)
        assert main(["verify", "failing", "4"]) == EXIT_BOUND_FAILURE

    def test_envelope(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert main(["verify", "fl", "40"]) == EXIT_COMPUTATION
        assert "BudgetExceeded" in capsys.readouterr().err

    def test_growth_with_signature(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert main(["verify", "growth", "8", "--sig", "(inf,inf,inf)", "--format", "json"]) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["bound"] == "growth"

    def test_growth_without_signature(self) -> None:
        assert main(["verify", "growth", "8"]) == EXIT_USAGE

    def test_degree_sum_exponent(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert main(["verify", "degreesum", "8", "--s", "1/2", "--format", "csv"]) == EXIT_OK
        rows = from_csv(capsys.readouterr().out)
        assert all(r["status"] == "report-only" for r in rows)


class TestSurfaces:
    def test_genus_two(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert main(["surfaces", "g=2", "3"]) == EXIT_OK
        assert capsys.readouterr().out == "15\n"

    def test_json(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert main(["surfaces", "g=2", "3", "--format", "json"]) == EXIT_OK
        assert json.loads(capsys.readouterr().out) == {
            "signature": "o;2;;0;0",
            "genus": "3",
            "index": "2",
            "count": "15",
            "skipped": "no",
        }

    def test_budget_skips(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert main(["surfaces", "(2,3,7)", "2"]) == EXIT_OK
        assert capsys.readouterr().out == "skipped\n"

    def test_budget_skips_json(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert main(["surfaces", "(2,3,7)", "2", "--format", "json"]) == EXIT_OK
        row = json.loads(capsys.readouterr().out)
        assert (row["index"], row["count"], row["skipped"]) == ("84", "", "yes")

    def test_no_admissible_index(self) -> None:
        assert main(["surfaces", "g=3", "2"]) == EXIT_USAGE


class TestCacheAndTable:
    def test_warm_and_stats(self, capsys: pytest.CaptureFixture[str], tmp_path: Path) -> None:
        path = tmp_path / "chars.cache"
        assert main(["cache", "warm", "--n", "6", "--cache", str(path)]) == EXIT_OK
        assert path.read_text(encoding="utf-8").startswith(CACHE_HEADER)
        entries = len(CharacterCache.load(path))
        assert entries > 0
        capsys.readouterr()
        assert main(["cache", "stats", "--cache", str(path)]) == EXIT_OK
        assert capsys.readouterr().out == f"{path}: {entries} entries\n"

    def test_cache_written_after_count(self, tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
        path = tmp_path / "chars.cache"
        monkeypatch.setenv("FUCHSIAN_GROWTH_CACHE", str(path))
        assert main(["count", "(2,3,7)", "--n", "8"]) == EXIT_OK
        assert len(CharacterCache.load(path)) > 0

    def test_cache_needs_path(self) -> None:
        assert main(["cache", "stats"]) == EXIT_USAGE

    def test_corrupt_cache(self, tmp_path: Path) -> None:
        path = tmp_path / "bad.cache"
        path.write_text("not a cache\n", encoding="utf-8")
        assert main(["count", "g=2", "--n", "2", "--cache", str(path)]) == EXIT_USAGE

    def test_table_show(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert main(["table", "show"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == TABLE_HEADER
        assert [line.split(",")[0] for line in lines[2:]] == ["Q", "Q(sqrt5)"]
