"""Number-field tables: ingestion, validation and the built-in rows.

CSV format, version 1::

    # fuchsian-growth field table v1
    label,degree,disc,zeta2_form,zeta2_value,class_number,primes
    Q,1,1,exact,1/6,1,2:2;3:3;5:5

``zeta2_form`` is ``exact`` (value q, meaning ζ_k(2) = q·π^{2d}/√Δ) or
``interval`` (value ``lo:hi`` with rational or decimal endpoints). ``primes``
lists prime ideals as ``label:norm`` separated by ``;``.
"""

from __future__ import annotations

import csv
import io
import logging
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Sequence, Union

from fuchsian_growth.errors import FuchsianGrowthError, TableFormatError
from fuchsian_growth.helpers import fmt_rational
from fuchsian_growth.types import (
    ExactZeta2,
    FieldLabel,
    IntervalZeta2,
    NumberFieldInvariants,
    PrimeIdeal,
    Zeta2,
)

logger = logging.getLogger(__name__)

TABLE_HEADER = "# fuchsian-growth field table v1"
COLUMNS = ("label", "degree", "disc", "zeta2_form", "zeta2_value", "class_number", "primes")
BUILTIN = "builtin"


def _int(value: str, row: int, column: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise TableFormatError(f"{value!r} is not an integer", row=row, column=column) from None


def _rational(value: str, row: int, column: str) -> Fraction:
    try:
        return Fraction(value.strip())
    except (ValueError, ZeroDivisionError):
        raise TableFormatError(f"{value!r} is not a rational number", row=row, column=column) from None


def _zeta2(form: str, value: str, row: int) -> Zeta2:
    try:
        if form == "exact":
            return ExactZeta2(_rational(value, row, "zeta2_value"))
        if form == "interval":
            lo, sep, hi = value.partition(":")
            if not sep:
                raise TableFormatError("interval value must be lo:hi", row=row, column="zeta2_value")
            return IntervalZeta2(_rational(lo, row, "zeta2_value"), _rational(hi, row, "zeta2_value"))
    except TableFormatError:
        raise
    except ValueError as exc:
        raise TableFormatError(str(exc), row=row, column="zeta2_value") from None
    raise TableFormatError(f"unknown zeta2 form {form!r}", row=row, column="zeta2_form")


def _primes(value: str, row: int) -> tuple[PrimeIdeal, ...]:
    primes = []
    for item in filter(None, (s.strip() for s in value.split(";"))):
        label, sep, norm = item.rpartition(":")
        if not sep or not label:
            raise TableFormatError(f"prime entry {item!r} is not label:norm", row=row, column="primes")
        try:
            primes.append(PrimeIdeal(norm=_int(norm, row, "primes"), label=label))
        except FuchsianGrowthError as exc:
            if isinstance(exc, TableFormatError):
                raise
            raise TableFormatError(str(exc), row=row, column="primes") from None
    labels = [p.label for p in primes]
    if len(set(labels)) != len(labels):
        raise TableFormatError("duplicate prime labels", row=row, column="primes")
    return tuple(primes)


def parse_field_table(text: str) -> tuple[NumberFieldInvariants, ...]:
    lines = text.splitlines()
    if not lines or lines[0].strip() != TABLE_HEADER:
        raise TableFormatError(f"first line must be {TABLE_HEADER!r}", row=1)
    reader = csv.reader(io.StringIO("\n".join(lines[1:])))
    try:
        header = next(reader)
    except StopIteration:
        raise TableFormatError("missing column header", row=2) from None
    if tuple(h.strip() for h in header) != COLUMNS:
        raise TableFormatError(f"columns must be {','.join(COLUMNS)}", row=2)
    fields: list[NumberFieldInvariants] = []
    seen: set[str] = set()
    for offset, record in enumerate(reader):
        row = offset + 3
        if not record or not "".join(record).strip():
            continue
        if len(record) != len(COLUMNS):
            raise TableFormatError(f"expected {len(COLUMNS)} columns, got {len(record)}", row=row)
        label, degree, disc, form, value, class_number, primes = (c.strip() for c in record)
        if not label:
            raise TableFormatError("empty label", row=row, column="label")
        if label in seen:
            raise TableFormatError(f"duplicate field {label!r}", row=row, column="label")
        seen.add(label)
        try:
            fields.append(NumberFieldInvariants(
                label=FieldLabel(label),
                degree=_int(degree, row, "degree"),
                discriminant=_int(disc, row, "disc"),
                zeta2=_zeta2(form, value, row),
                class_number=_int(class_number, row, "class_number"),
                primes=_primes(primes, row),
            ))
        except TableFormatError:
            raise
        except ValueError as exc:
            raise TableFormatError(str(exc), row=row) from None
    logger.debug("parsed %d field rows", len(fields))
    return tuple(fields)


def load_field_table(path: Union[str, Path]) -> tuple[NumberFieldInvariants, ...]:
    return parse_field_table(Path(path).read_text(encoding="utf-8"))


def builtin_field_table() -> tuple[NumberFieldInvariants, ...]:
    text = resources.files("fuchsian_growth").joinpath("data/fields_v1.csv").read_text(encoding="utf-8")
    return parse_field_table(text)


def resolve_table(source: Union[str, Path]) -> tuple[NumberFieldInvariants, ...]:
    """``builtin`` or a path to a v1 table."""
    if str(source) == BUILTIN:
        return builtin_field_table()
    return load_field_table(source)


def get_field(table: Sequence[NumberFieldInvariants], label: str) -> NumberFieldInvariants:
    for field in table:
        if field.label == label:
            return field
    raise KeyError(f"no field labelled {label!r}")


def format_field_table(table: Sequence[NumberFieldInvariants]) -> str:
    out = io.StringIO()
    out.write(TABLE_HEADER + "\n")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(COLUMNS)
    for f in table:
        if isinstance(f.zeta2, ExactZeta2):
            form, value = "exact", fmt_rational(f.zeta2.q)
        else:
            form, value = "interval", f"{fmt_rational(f.zeta2.lo)}:{fmt_rational(f.zeta2.hi)}"
        primes = ";".join(f"{p.label}:{p.norm}" for p in f.primes)
        writer.writerow((f.label, f.degree, f.discriminant, form, value, f.class_number, primes))
    return out.getvalue()
