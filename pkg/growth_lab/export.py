"""Row builders, CSV/JSON writers and the schema check for CLI output.

Every value is written as a string: integers in full decimal, rationals as
``p/q``, π-multiples as ``q*pi`` and enclosures as ``[lo, hi]`` truncated
decimals, so that nothing passes through a float.
"""

from __future__ import annotations

import csv
import io
import json
import re
from typing import Any, Callable, Sequence

from fuchsian_growth.helpers import fmt_decimal
from fuchsian_growth.intervals import Enclosure
from fuchsian_growth.types import CensusCandidate, Covolume, HomCountSeries, PrimeIdeal, SubgroupCounts

from growth_lab.config import OutputFormat
from growth_lab.reports import BoundReport, PointStatus

Row = dict[str, str]

COUNT_COLUMNS = ("n", "h_n", "t_n", "a_n", "s_n")
CENSUS_COLUMNS = ("field", "ram", "s_set", "m_min", "m_max", "bracket", "uniform", "covolume_low", "covolume_high")
REPORT_COLUMNS = ("bound", "params", "status", "value", "witness")

COLUMNS: dict[str, tuple[str, ...]] = {
    "count": COUNT_COLUMNS,
    "census": CENSUS_COLUMNS,
    "report": REPORT_COLUMNS,
}


class SchemaError(ValueError):
    def __init__(self, message: str, row: int, column: str = "") -> None:
        where = f"row {row}" + (f", column {column}" if column else "")
        super().__init__(f"{where}: {message}")
        self.row = row
        self.column = column


# ---------- Row builders ----------

def count_rows(series: HomCountSeries, counts: SubgroupCounts) -> list[Row]:
    return [
        {
            "n": str(n),
            "h_n": str(series.values[n]),
            "t_n": str(counts.t_n(n)),
            "a_n": str(counts.a_n(n)),
            "s_n": str(counts.s_n(n)),
        }
        for n in range(1, series.N + 1)
    ]


def _primes(primes: Sequence[PrimeIdeal]) -> str:
    return ";".join(f"{p.label}:{p.norm}" for p in primes)


def render_covolume(value: Covolume, digits: int = 20) -> str:
    if isinstance(value, Enclosure):
        return f"[{fmt_decimal(value.lo, digits)}, {fmt_decimal(value.hi, digits)}]"
    return str(value)


def census_rows(candidates: Sequence[CensusCandidate]) -> list[Row]:
    rows = []
    for c in candidates:
        m_min, m_max = c.m_range
        rows.append({
            "field": str(c.field_label),
            "ram": _primes(c.ramification),
            "s_set": _primes(c.s_set),
            "m_min": str(m_min),
            "m_max": str(m_max),
            "bracket": c.bracket,
            "uniform": "yes" if c.uniform else "no",
            "covolume_low": render_covolume(c.covolume.low),
            "covolume_high": render_covolume(c.covolume.high),
        })
    return rows


def report_rows(report: BoundReport) -> list[Row]:
    return [
        {
            "bound": report.bound,
            "params": ";".join(f"{k}={v}" for k, v in p.params),
            **{k: v for k, v in p.to_dict().items() if k in ("status", "value", "witness")},
        }
        for p in report.points
    ]


# ---------- Schema check ----------

_INTEGER = re.compile(r"-?\d+$")
_RATIONAL = r"-?\d+(?:/\d+)?"
_COVOLUME = re.compile(rf"(?:{_RATIONAL}\*pi|\[-?\d+\.\d+, -?\d+\.\d+\])$")
_PRIMES = re.compile(r"(?:[^;:]+:\d+(?:;[^;:]+:\d+)*)?$")
_STATUSES = {s.value for s in PointStatus}


def _check_count(row: Row, i: int) -> None:
    for column in COUNT_COLUMNS:
        if not _INTEGER.match(row[column]) or row[column].startswith("-"):
            raise SchemaError(f"{row[column]!r} is not a non-negative integer", i, column)


def _check_census(row: Row, i: int) -> None:
    for column in ("ram", "s_set"):
        if not _PRIMES.match(row[column]):
            raise SchemaError(f"{row[column]!r} is not a label:norm list", i, column)
    for column in ("m_min", "m_max"):
        if not _INTEGER.match(row[column]):
            raise SchemaError(f"{row[column]!r} is not an integer", i, column)
    if row["bracket"] != "interval" and not re.match(r"exact:\d+$", row["bracket"]):
        raise SchemaError(f"bad bracket {row['bracket']!r}", i, "bracket")
    if row["uniform"] not in ("yes", "no"):
        raise SchemaError("uniform must be yes or no", i, "uniform")
    for column in ("covolume_low", "covolume_high"):
        if not _COVOLUME.match(row[column]):
            raise SchemaError(f"{row[column]!r} is not a covolume", i, column)


def _check_report(row: Row, i: int) -> None:
    if row["status"] not in _STATUSES:
        raise SchemaError(f"unknown status {row['status']!r}", i, "status")


_CHECKS: dict[str, Callable[[Row, int], None]] = {
    "count": _check_count,
    "census": _check_census,
    "report": _check_report,
}


def validate_rows(kind: str, rows: Sequence[Row]) -> None:
    """Raise SchemaError unless every row has exactly the columns of ``kind`` with well-formed values."""
    if kind not in COLUMNS:
        raise ValueError(f"unknown row kind {kind!r}")
    expected = set(COLUMNS[kind])
    for i, row in enumerate(rows, start=1):
        if set(row) != expected:
            raise SchemaError(f"columns {sorted(row)} != {sorted(expected)}", i)
        _CHECKS[kind](row, i)


# ---------- Writers ----------

def to_csv(kind: str, rows: Sequence[Row]) -> str:
    out = io.StringIO()
    writer = csv.DictWriter(out, fieldnames=COLUMNS[kind], lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return out.getvalue()


def from_csv(text: str) -> list[Row]:
    return [dict(r) for r in csv.DictReader(io.StringIO(text))]


def to_json(payload: Any) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def to_table(kind: str, rows: Sequence[Row]) -> str:
    columns = COLUMNS[kind]
    widths = [max(len(c), *(len(r[c]) for r in rows)) if rows else len(c) for c in columns]
    lines = ["  ".join(c.rjust(w) for c, w in zip(columns, widths))]
    for r in rows:
        lines.append("  ".join(r[c].rjust(w) for c, w in zip(columns, widths)))
    return "\n".join(lines) + "\n"


def render_rows(kind: str, rows: Sequence[Row], fmt: OutputFormat) -> str:
    validate_rows(kind, rows)
    if fmt is OutputFormat.CSV:
        return to_csv(kind, rows)
    if fmt is OutputFormat.JSON:
        return to_json(list(rows))
    return to_table(kind, rows)


def render_report(report: BoundReport, fmt: OutputFormat) -> str:
    if fmt is OutputFormat.JSON:
        return to_json(report.to_dict())
    if fmt is OutputFormat.CSV:
        return render_rows("report", report_rows(report), fmt)
    return report.render_table()
