"""Exception hierarchy for fuchsian-growth.

Input-shape problems are ``ValueError`` subclasses; failures of an internal
identity (a count that must be an integer, a theorem that must hold) are
``ArithmeticError`` subclasses and always indicate a bug.
"""

from __future__ import annotations

from typing import Any, Optional


class FuchsianGrowthError(Exception):
    """Root of every error raised by this package."""


# ---------- Input errors ----------

class InvalidPartition(FuchsianGrowthError, ValueError):
    pass


class InvalidClassVector(FuchsianGrowthError, ValueError):
    pass


class SignatureParseError(FuchsianGrowthError, ValueError):
    def __init__(self, message: str, text: str, position: int, expected: frozenset[str]) -> None:
        super().__init__(f"{message} at position {position} in {text!r}; expected one of {sorted(expected)}")
        self.text = text
        self.position = position
        self.expected = expected


class NonFuchsian(FuchsianGrowthError, ValueError):
    """Signature has μ ≤ 0, so it does not describe a lattice."""


class Cocompact(FuchsianGrowthError, ValueError):
    """Operation needs cusps or boundary (s + t > 0)."""


class SignatureMismatch(FuchsianGrowthError, ValueError):
    """Operation does not apply to this kind of signature."""


class InvalidSignature(FuchsianGrowthError, ValueError):
    """Signature data violates its own invariants (period below 2, negative counts)."""


class InvalidPrimeIdeal(FuchsianGrowthError, ValueError):
    pass


class IndivisibleIndex(FuchsianGrowthError, ValueError):
    pass


class NoAdmissibleIndex(FuchsianGrowthError, ValueError):
    pass


class ParityViolation(FuchsianGrowthError, ValueError):
    pass


class InvalidBracket(FuchsianGrowthError, ValueError):
    pass


class InvalidM(FuchsianGrowthError, ValueError):
    pass


class TableFormatError(FuchsianGrowthError, ValueError):
    def __init__(self, message: str, row: int, column: Optional[str] = None) -> None:
        where = f"row {row}" if column is None else f"row {row}, column {column!r}"
        super().__init__(f"{where}: {message}")
        self.row = row
        self.column = column


# ---------- Consistency errors ----------

class ConsistencyError(FuchsianGrowthError, ArithmeticError):
    """An exact identity failed; the computation that raised it is wrong."""

    def __init__(self, message: str, witness: Any = None) -> None:
        super().__init__(message)
        self.witness = witness


class IntegralityViolation(ConsistencyError):
    pass


class DivisibilityViolation(ConsistencyError):
    pass


class BoundViolation(ConsistencyError):
    pass


# ---------- Resource limits ----------

class BudgetExceeded(FuchsianGrowthError, RuntimeError):
    pass


class CensusTooLarge(BudgetExceeded):
    pass
