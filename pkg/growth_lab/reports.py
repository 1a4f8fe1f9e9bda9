"""Bound reports: ReportPoint, BoundReport, and rendering helpers."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional, Union

from fuchsian_growth.helpers import fmt_decimal, fmt_rational
from fuchsian_growth.intervals import Enclosure

ReportValue = Union[int, Fraction, Enclosure, None]


class PointStatus(enum.Enum):
    EXACT_PASS = "exact-pass"
    EXACT_FAIL = "exact-fail"
    REPORT_ONLY = "report-only"


def render_value(value: ReportValue, digits: int = 20) -> str:
    """Exact values as integers or p/q, enclosures as [lo, hi] truncated decimals."""
    if value is None:
        return ""
    if isinstance(value, Enclosure):
        return f"[{fmt_decimal(value.lo, digits)}, {fmt_decimal(value.hi, digits)}]"
    return fmt_rational(Fraction(value))


@dataclass(frozen=True)
class ReportPoint:
    params: tuple[tuple[str, Any], ...]  # e.g. (("n", 6), ("m", 3))
    status: PointStatus
    value: ReportValue = None
    witness: Optional[str] = None

    def param(self, name: str) -> Any:
        for key, value in self.params:
            if key == name:
                return value
        raise KeyError(name)

    def to_dict(self) -> dict[str, Any]:
        return {
            "params": {k: str(v) for k, v in self.params},
            "status": self.status.value,
            "value": render_value(self.value),
            "witness": self.witness or "",
        }


@dataclass(frozen=True)
class BoundReport:
    """Results of one bound suite over its parameter grid."""

    bound: str
    grid: tuple[tuple[str, str], ...]
    points: tuple[ReportPoint, ...]
    constant: Optional[Enclosure] = None
    notes: tuple[str, ...] = ()

    @property
    def exact_points(self) -> tuple[ReportPoint, ...]:
        return tuple(p for p in self.points if p.status is not PointStatus.REPORT_ONLY)

    @property
    def failures(self) -> tuple[ReportPoint, ...]:
        return tuple(p for p in self.points if p.status is PointStatus.EXACT_FAIL)

    @property
    def all_pass(self) -> bool:
        return not self.failures

    def exact_signature(self) -> tuple[tuple[Any, ...], ...]:
        """The exact-checked content, for reproducibility comparisons."""
        return tuple((p.params, p.status, render_value(p.value), p.witness) for p in self.exact_points)

    def to_dict(self) -> dict[str, Any]:
        return {
            "bound": self.bound,
            "grid": dict(self.grid),
            "all_pass": self.all_pass,
            "constant": render_value(self.constant),
            "notes": list(self.notes),
            "points": [p.to_dict() for p in self.points],
        }

    def render_table(self) -> str:
        names = [k for k, _ in self.points[0].params] if self.points else []
        header = [*names, "status", "value", "witness"]
        rows = [
            [*(str(v) for _, v in p.params), p.status.value, render_value(p.value), p.witness or ""]
            for p in self.points
        ]
        widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(header)]
        lines = [f"bound: {self.bound}  ({', '.join(f'{k}={v}' for k, v in self.grid)})"]
        lines.append("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip())
        for r in rows:
            lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
        if self.constant is not None:
            lines.append(f"empirical constant: {render_value(self.constant)}")
        for note in self.notes:
            lines.append(f"note: {note}")
        verdict = "all exact checks pass" if self.all_pass else f"{len(self.failures)} exact check(s) FAILED"
        lines.append(verdict)
        return "\n".join(lines) + "\n"


def max_enclosure(values: list[Enclosure]) -> Optional[Enclosure]:
    """Enclosure of max(x_i) given enclosures of each x_i."""
    if not values:
        return None
    return Enclosure(max(v.lo for v in values), max(v.hi for v in values))
