"""fuchsian-growth command line.

Commands:
    count SIG --n N           h_n, t_n, a_n, s_n for n = 1..N
    character LAMBDA CYCLES   χ_λ on a cycle type, e.g. "2,1" "3"
    census --budget X         candidate maximal arithmetic lattices of covolume ≤ X
    verify SUITE N_MAX        run a bound suite (exit 3 on an exact failure)
    surfaces SIG GENUS        torsion-free surface subgroups of the given genus
    cache stats|warm          inspect or pre-fill the character cache file
    table show                print the field table

Run:
    fuchsian-growth count "(2,3,inf)" --n 10
    python -m growth_lab.cli census --budget "pi/3" --format csv

Results go to stdout; logging and progress go to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, NoReturn, Optional, Sequence

from fuchsian_growth.borel import SIEGEL_FLOOR
from fuchsian_growth.cache import CharacterCache
from fuchsian_growth.census import CensusOptions, census
from fuchsian_growth.characters import character, character_table
from fuchsian_growth.errors import FuchsianGrowthError
from fuchsian_growth.fields import format_field_table, resolve_table
from fuchsian_growth.homs import subgroup_counts, surfaces_of_genus
from fuchsian_growth.signature import format_signature, parse_signature
from fuchsian_growth.trace import Tracer
from fuchsian_growth.types import BracketMode, BracketValue, CharacterQuery, CycleType, HomSeriesMode, Partition, as_enclosure

from growth_lab.config import ConfigError, OutputFormat, RunConfig, parse_budget
from growth_lab.export import census_rows, count_rows, render_report, render_rows, to_json
from growth_lab.harness import SuiteHarness
from growth_lab.suites import SUITES, SuiteParams

logger = logging.getLogger("growth_lab")

# ===== EXIT CODES =====
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_COMPUTATION = 2
EXIT_BOUND_FAILURE = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _parse_parts(text: str) -> tuple[int, ...]:
    cleaned = text.strip().strip("()")
    if not cleaned:
        return ()
    try:
        return tuple(int(p) for p in cleaned.split(","))
    except ValueError:
        raise ConfigError(f"{text!r} is not a comma-separated list of integers") from None


def _parse_bracket(text: Optional[str]) -> BracketValue:
    if text is None:
        return BracketValue(1)
    if text == BracketMode.INTERVAL.value:
        return BracketValue(None)
    try:
        return BracketValue(int(text))
    except ValueError:
        raise ConfigError(f"--bracket must be 'interval' or an integer, got {text!r}") from None


class Session:
    """One CLI invocation: config, cache and tracer shared by the command handlers."""

    def __init__(self, config: RunConfig, out: Any = None) -> None:
        self.config = config
        self.policy = config.policy()
        self.out = out if out is not None else sys.stdout
        self.tracer = Tracer(enabled=logger.isEnabledFor(logging.INFO))
        self.cache = self._load_cache()

    def _load_cache(self) -> CharacterCache:
        path = self.config.cache_path
        if path is not None and path.exists():
            cache = CharacterCache.load(path)
            logger.info("loaded %d cached characters from %s", len(cache), path)
            return cache
        return CharacterCache()

    def save_cache(self) -> None:
        if self.config.cache_path is not None:
            count = self.cache.save(self.config.cache_path)
            logger.info("saved %d cached characters to %s", count, self.config.cache_path)

    def emit(self, text: str) -> None:
        self.out.write(text)

    def progress(self) -> None:
        for line in self.tracer.dump():
            logger.info("%s", line)
        self.tracer.clear()

    # ---------- Commands ----------

    def count(self, args: argparse.Namespace) -> int:
        if self.config.signature is None or self.config.n is None:
            raise ConfigError("count needs a signature and --n")
        sig = parse_signature(self.config.signature)
        mode = HomSeriesMode(args.mode)
        series, counts = subgroup_counts(sig, self.config.n, mode, self.cache, self.policy, self.tracer)
        self.progress()
        self.emit(render_rows("count", count_rows(series, counts), self.config.output_format))
        return EXIT_OK

    def character(self, args: argparse.Namespace) -> int:
        q = CharacterQuery(Partition(_parse_parts(args.lam)), CycleType.sorted_from(_parse_parts(args.cycles)))
        value = character(q, self.cache, self.policy)
        if self.config.output_format is OutputFormat.JSON:
            self.emit(to_json({"lambda": str(q.lam), "cycles": str(q.cycles), "value": str(value)}))
        else:
            self.emit(f"{value}\n")
        return EXIT_OK

    def census(self, args: argparse.Namespace) -> int:
        if self.config.budget is None:
            raise ConfigError("census needs --budget")
        x = parse_budget(self.config.budget)
        table = resolve_table(self.config.table)
        options = CensusOptions(bracket=_parse_bracket(args.bracket), include_s_sets=not args.no_s_sets)
        rows = census(table, x, options, self.policy, self.tracer)
        self.progress()
        floor = SIEGEL_FLOOR.enclosure(self.policy.precision_dps)
        if not rows and as_enclosure(x, self.policy.precision_dps).certainly_lt(floor):
            print(
                f"note: budget {self.config.budget} is below π/42, the smallest covolume of any Fuchsian group",
                file=sys.stderr,
            )
        self.emit(render_rows("census", census_rows(rows), self.config.output_format))
        return EXIT_OK

    def verify(self, args: argparse.Namespace) -> int:
        sig = parse_signature(self.config.signature) if self.config.signature else None
        params = SuiteParams(n_max=args.n_max, signature=sig, s=Fraction(args.s), force=self.config.force)
        harness = SuiteHarness(self.policy, self.cache, self.tracer)
        report = harness.run_single(args.suite, params)
        self.progress()
        self.emit(render_report(report, self.config.output_format))
        return EXIT_OK if report.all_pass else EXIT_BOUND_FAILURE

    def surfaces(self, args: argparse.Namespace) -> int:
        if self.config.signature is None:
            raise ConfigError("surfaces needs a signature")
        sig = parse_signature(self.config.signature)
        result = surfaces_of_genus(sig, args.genus, self.config.force, self.cache, self.policy, self.tracer)
        self.progress()
        count = "" if result.count is None else str(result.count)
        if self.config.output_format is OutputFormat.JSON:
            self.emit(to_json({
                "signature": format_signature(sig),
                "genus": str(result.genus),
                "index": str(result.index),
                "count": count,
                "skipped": "yes" if result.skipped else "no",
            }))
        else:
            self.emit("skipped\n" if result.skipped else f"{count}\n")
        return EXIT_OK

    def cache_cmd(self, args: argparse.Namespace) -> int:
        if self.config.cache_path is None:
            raise ConfigError("cache commands need --cache or FUCHSIAN_GROWTH_CACHE")
        if args.action == "warm":
            for n in range(1, args.n + 1):
                with self.tracer.stage("character_table", n=n):
                    character_table(n, self.cache, self.policy)
            self.progress()
            self.save_cache()
        stats = self.cache.stats()
        self.emit(f"{self.config.cache_path}: {stats.entries} entries\n")
        return EXIT_OK

    def table_cmd(self, args: argparse.Namespace) -> int:
        self.emit(format_field_table(resolve_table(self.config.table)))
        return EXIT_OK


# ===== ARGUMENTS =====

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--table", help="field table path or 'builtin'")
    common.add_argument("--cache", dest="cache_path", help="character cache file")
    common.add_argument("--format", dest="output_format", choices=[f.value for f in OutputFormat])
    common.add_argument("--threads", type=int)
    common.add_argument("--precision", type=int, help="interval precision in decimal digits")
    common.add_argument("--force", action="store_true", help="run beyond the resource envelope")
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = _Parser(prog="fuchsian-growth", description="Subgroup growth of Fuchsian groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", parents=[common], help="subgroup counts up to index N")
    p.add_argument("signature")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=[m.value for m in HomSeriesMode], default=HomSeriesMode.FACTORED.value)

    p = sub.add_parser("character", parents=[common], help="one character value")
    p.add_argument("lam", metavar="LAMBDA")
    p.add_argument("cycles", metavar="CYCLES")

    p = sub.add_parser("census", parents=[common], help="arithmetic lattices under a covolume budget")
    p.add_argument("--budget", required=True, help="'q*pi', 'pi/3' or a decimal")
    p.add_argument("--bracket", help="'interval' or an exact integer (default 1)")
    p.add_argument("--no-s-sets", action="store_true", help="only the maximal groups Γ_{∅,𝔇}")

    p = sub.add_parser("verify", parents=[common], help="run a bound suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("n_max", type=int)
    p.add_argument("--sig", dest="signature", help="signature for growth suites")
    p.add_argument("--s", default="1", help="exponent for degreesum")

    p = sub.add_parser("surfaces", parents=[common], help="surface subgroups of a given genus")
    p.add_argument("signature")
    p.add_argument("genus", type=int)

    p = sub.add_parser("cache", parents=[common], help="character cache maintenance")
    p.add_argument("action", choices=["stats", "warm"])
    p.add_argument("--n", type=int, default=10, help="warm character tables of S_1..S_n")

    p = sub.add_parser("table", parents=[common], help="field tables")
    p.add_argument("action", choices=["show"])

    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(stream=sys.stderr, level=level, format="%(levelname)s %(name)s: %(message)s")


def _run_config(args: argparse.Namespace) -> RunConfig:
    flags = {
        "command": args.command,
        "signature": getattr(args, "signature", None),
        "n": getattr(args, "n", None) if args.command == "count" else None,
        "budget": getattr(args, "budget", None),
        "table": args.table,
        "cache_path": args.cache_path,
        "output_format": args.output_format,
        "threads": args.threads,
        "precision": args.precision,
        "force": args.force,
    }
    return RunConfig.resolve(flags)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)
    try:
        config = _run_config(args)
        session = Session(config)
        handlers: dict[str, Callable[[argparse.Namespace], int]] = {
            "count": session.count,
            "character": session.character,
            "census": session.census,
            "verify": session.verify,
            "surfaces": session.surfaces,
            "cache": session.cache_cmd,
            "table": session.table_cmd,
        }
        status = handlers[args.command](args)
        if args.command != "cache":
            session.save_cache()
        return status
    except ValueError as exc:
        # bad input: signatures, partitions, tables, budgets, flags
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FuchsianGrowthError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_COMPUTATION


if __name__ == "__main__":
    sys.exit(main())
