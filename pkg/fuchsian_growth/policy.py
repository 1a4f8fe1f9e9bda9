"""Engine policy and its POLICY_DEFAULT instance."""

from __future__ import annotations

import os
import dataclasses
from dataclasses import dataclass, field
from typing import Any

from fuchsian_growth.intervals import DEFAULT_DPS

MIN_PRECISION_DPS = 16


def _default_threads() -> int:
    return os.cpu_count() or 1


@dataclass(frozen=True)
class Policy:
    # Interval arithmetic
    precision_dps: int = DEFAULT_DPS  # decimal digits handed to mpmath.iv

    # Parallelism
    threads: int = field(default_factory=_default_threads)

    # Character cache
    cache_enabled: bool = True

    # Resource envelope
    partition_budget: int = 1_000_000  # largest p(n) run without --force
    strict_budget: bool = False  # over-budget surface counts raise instead of being skipped
    census_cap: int = 100_000  # candidate rows before CensusTooLarge

    def __post_init__(self) -> None:
        if self.precision_dps < MIN_PRECISION_DPS:
            raise ValueError(f"precision must be at least {MIN_PRECISION_DPS} digits, got {self.precision_dps}")
        if self.threads < 1:
            raise ValueError(f"thread count must be positive, got {self.threads}")

    def replace(self, **kwargs: Any) -> Policy:
        return dataclasses.replace(self, **kwargs)


POLICY_DEFAULT = Policy()
