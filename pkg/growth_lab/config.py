"""Run configuration assembled from flags and environment variables.

Precedence: command-line flag > environment variable > default.

    FUCHSIAN_GROWTH_THREADS     worker threads
    FUCHSIAN_GROWTH_CACHE       character cache file
    FUCHSIAN_GROWTH_PRECISION   interval precision in decimal digits (≥ 16)
    FUCHSIAN_GROWTH_FORMAT      table | csv | json
    FUCHSIAN_GROWTH_TABLE       field table path, or "builtin"
"""

from __future__ import annotations

import enum
import os
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Mapping, Optional

from fuchsian_growth.fields import BUILTIN
from fuchsian_growth.intervals import DEFAULT_DPS, Enclosure
from fuchsian_growth.policy import MIN_PRECISION_DPS, POLICY_DEFAULT, Policy
from fuchsian_growth.types import PiMultiple, RealValue

ENV_PREFIX = "FUCHSIAN_GROWTH_"


class OutputFormat(enum.Enum):
    TABLE = "table"
    CSV = "csv"
    JSON = "json"


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    """Configuration for one CLI invocation."""

    command: str = ""

    # Inputs
    signature: Optional[str] = None
    n: Optional[int] = None
    budget: Optional[str] = None  # "q*pi", "pi/3" or a decimal
    table: str = BUILTIN
    cache_path: Optional[Path] = None

    # Output
    output_format: OutputFormat = OutputFormat.TABLE

    # Engine
    threads: int = POLICY_DEFAULT.threads
    precision: int = DEFAULT_DPS
    force: bool = False

    def __post_init__(self) -> None:
        if self.precision < MIN_PRECISION_DPS:
            raise ConfigError(f"precision must be at least {MIN_PRECISION_DPS} digits (width ≤ 1e-15)")
        if self.threads < 1:
            raise ConfigError("thread count must be positive")
        if self.n is not None and self.n < 0:
            raise ConfigError("n must be non-negative")

    def policy(self, base: Policy = POLICY_DEFAULT) -> Policy:
        return base.replace(threads=self.threads, precision_dps=self.precision)

    @classmethod
    def resolve(
        cls,
        flags: Mapping[str, Any],
        environ: Optional[Mapping[str, str]] = None,
    ) -> RunConfig:
        """Merge parsed flags (``None`` = not given) over the environment and defaults."""
        env = os.environ if environ is None else environ
        values: dict[str, Any] = {}

        def pick(name: str, env_name: str, convert: Any) -> None:
            given = flags.get(name)
            if given is not None:
                values[name] = given
                return
            raw = env.get(ENV_PREFIX + env_name)
            if raw:
                try:
                    values[name] = convert(raw)
                except ValueError:
                    raise ConfigError(f"{ENV_PREFIX + env_name}={raw!r} is not valid") from None

        pick("threads", "THREADS", int)
        pick("precision", "PRECISION", int)
        pick("cache_path", "CACHE", Path)
        pick("table", "TABLE", str)
        pick("output_format", "FORMAT", OutputFormat)
        for name in ("command", "signature", "n", "budget", "force"):
            if flags.get(name) is not None:
                values[name] = flags[name]
        if isinstance(values.get("output_format"), str):
            values["output_format"] = OutputFormat(values["output_format"])
        if isinstance(values.get("cache_path"), str):
            values["cache_path"] = Path(values["cache_path"])
        return cls(**values)


_PI_BUDGET = re.compile(r"^(?:(?P<q>[0-9]+(?:/[0-9]+)?)\*)?pi(?:/(?P<d>[0-9]+))?$")


def parse_budget(text: str) -> RealValue:
    """``q*pi``, ``pi/3``, ``pi`` stay exact π-multiples; a plain decimal is a point enclosure."""
    cleaned = text.strip().lower().replace("π", "pi").replace(" ", "")
    match = _PI_BUDGET.match(cleaned)
    if match:
        q = Fraction(match.group("q") or 1)
        d = int(match.group("d") or 1)
        if d == 0:
            raise ConfigError(f"budget {text!r} divides by zero")
        return PiMultiple(q / d)
    try:
        value = Fraction(cleaned)
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"budget {text!r} is neither 'q*pi' nor a decimal") from None
    return Enclosure.point(value)
