"""
SnapCheck command line.

Usage:
    snapcheck check data/traces/first_execution.trace
    snapcheck oracle data/traces/crossed_scans.trace
    snapcheck simulate AtomicMock configs/schedules/first_execution.json
    snapcheck hunt SingleCollect --processes 3 --bound-steps 8 --bound-ops 1
    snapcheck reduction EvenMask --domain 0,1,2 --processes 2 --bound-steps 6 --bound-ops 1
    snapcheck props data/traces/first_execution.trace data/alpha/first_execution.alpha

Exit codes: 0 correct/clean, 1 violation/counterexample, 2 usage or input error.
Reports go to stdout (and --out); logs go to stderr (and --log-file).
"""

import argparse
from dataclasses import dataclass
import logging
import sys
from collections.abc import Sequence

from SnapCheck.algorithms import BUILTIN_MODELS, get_model
from SnapCheck.checking.alpha import (
    check_properties,
    diagnose,
    iter_correct_alphas,
    search_alpha,
)
from SnapCheck.checking.linearizer import build_linearization
from SnapCheck.checking.oracle import oracle_linearizable
from SnapCheck.checking.validation import validate
from SnapCheck.config import CheckerConfig
from SnapCheck.exploration import HuntBounds, check_reduction, hunt
from SnapCheck.gateway import report_gateway
from SnapCheck.gateway.schedule_gateway import load_schedule
from SnapCheck.gateway.trace_gateway import load_trace, serialize_trace
from SnapCheck.logging_config import setup_logging
from SnapCheck.models import Execution
from SnapCheck.simulation import run

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT_ERROR = 2

COMMANDS = ("check", "oracle", "simulate", "hunt", "reduction", "props")
BOUNDED_COMMANDS = ("hunt", "reduction")


class CommandError(Exception):
    """Input problem detected by a command (reported with exit code 2)."""


@dataclass(frozen=True)
class CliConfig:
    """
    Parsed command line.

    Attributes:
        command: One of COMMANDS
        target: Trace path or model name
        second: Alpha file (props) or schedule file (simulate)
        bounds: Structural bounds, set only for BOUNDED_COMMANDS
        paranoid: Cross-check hunt verdicts with the oracle
        all_alphas: Enumerate every correct alpha in check
        jobs: Worker processes
        out: Report output path
        stats: CSV path for hunt statistics
        domain: Value domain for reduction
    """

    command: str
    target: str
    second: str | None
    bounds: HuntBounds | None = None
    paranoid: bool = False
    all_alphas: bool = False
    jobs: int = 1
    out: str | None = None
    stats: str | None = None
    domain: tuple[int, ...] = (0, 1, 2)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"Unknown command {self.command!r}")
        if self.command in BOUNDED_COMMANDS and self.bounds is None:
            raise ValueError(f"{self.command} needs bounds")
        if self.bounds is not None and (
            self.bounds.max_steps < 1 or self.bounds.max_ops_per_process < 1
        ):
            raise ValueError("Bounds must be positive")
        if self.jobs < 1:
            raise ValueError(f"--jobs must be positive, got {self.jobs}")

    @classmethod
    def from_args(cls, args: argparse.Namespace, defaults: CheckerConfig) -> "CliConfig":
        bounds = None
        if args.command in BOUNDED_COMMANDS:
            bounds = HuntBounds(args.processes, args.bound_steps, args.bound_ops)
        return cls(
            command=args.command,
            target=args.target,
            second=getattr(args, "second", None),
            bounds=bounds,
            paranoid=args.paranoid,
            all_alphas=args.all_alphas,
            jobs=args.jobs or defaults.jobs,
            out=args.out,
            stats=args.stats,
            domain=tuple(int(v) for v in args.domain.split(",") if v.strip()),
        )


# ============================================================================
# COMMANDS
# ============================================================================


def _load_valid_trace(path: str) -> Execution:
    execution = load_trace(path)
    report = validate(execution)
    if not report.is_valid:
        for line in report_gateway.format_validation(report):
            logger.error(line)
        raise CommandError(f"{path}: {len(report)} structural problem(s)")
    return execution


def cmd_check(config: CliConfig) -> tuple[int, list[str]]:
    execution = _load_valid_trace(config.target)
    alpha = search_alpha(execution)
    if alpha is None:
        lines = [report_gateway.NOT_LINEARIZABLE, *diagnose(execution).lines()]
        return EXIT_VIOLATION, lines

    lines = [report_gateway.LINEARIZABLE]
    lines += report_gateway.format_alpha(alpha)
    lines += report_gateway.format_linearization(build_linearization(execution, alpha))
    if config.all_alphas:
        count = sum(1 for _ in iter_correct_alphas(execution))
        lines.append(f"# correct alpha assignments: {count}")
    return EXIT_OK, lines


def cmd_oracle(config: CliConfig, defaults: CheckerConfig) -> tuple[int, list[str]]:
    execution = _load_valid_trace(config.target)
    candidate = oracle_linearizable(execution, bound=defaults.oracle_bound)
    status = EXIT_OK if candidate is not None else EXIT_VIOLATION
    return status, report_gateway.format_verdict(candidate)


def cmd_simulate(config: CliConfig) -> tuple[int, list[str]]:
    if config.second is None:
        raise CommandError("simulate needs a schedule file")
    model = get_model(config.target)
    loaded = load_schedule(config.second)
    execution = run(model, loaded.schedule, loaded.scripts, loaded.initial_value)
    lines = [f"# model={model.name} schedule={loaded.schedule}"]
    lines += serialize_trace(execution).splitlines()
    return EXIT_OK, lines


def cmd_hunt(config: CliConfig, defaults: CheckerConfig) -> tuple[int, list[str]]:
    model = get_model(config.target)
    bounds = config.bounds
    report = hunt(
        model,
        bounds.n,
        bounds.max_steps,
        bounds.max_ops_per_process,
        paranoid=config.paranoid,
        jobs=config.jobs,
        oracle_bound=defaults.oracle_bound,
        progress_every=defaults.progress_every,
    )
    if config.stats:
        report.stats_frame().to_csv(config.stats, index=False)
        logger.info(f"Hunt statistics written to {config.stats}")
    status = EXIT_OK if report.clean else EXIT_VIOLATION
    return status, report_gateway.format_hunt_report(report)


def cmd_reduction(config: CliConfig, defaults: CheckerConfig) -> tuple[int, list[str]]:
    model = get_model(config.target)
    bounds = config.bounds
    report = check_reduction(
        model,
        config.domain,
        bounds.n,
        bounds.max_steps,
        bounds.max_ops_per_process,
        jobs=config.jobs,
        oracle_bound=defaults.oracle_bound,
        progress_every=defaults.progress_every,
    )
    status = EXIT_OK if report.holds else EXIT_VIOLATION
    return status, report_gateway.format_reduction_report(report)


def cmd_props(config: CliConfig) -> tuple[int, list[str]]:
    if config.second is None:
        raise CommandError("props needs an alpha file")
    execution = _load_valid_trace(config.target)
    alpha = report_gateway.load_alpha(config.second, execution)
    violations = check_properties(execution, alpha)
    status = EXIT_VIOLATION if violations else EXIT_OK
    return status, report_gateway.format_violations(violations)


# ============================================================================
# ARGUMENT PARSING
# ============================================================================


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="snapcheck",
        description="Linearizability checking and counterexample hunting for snapshot objects",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=f"Models: {', '.join(BUILTIN_MODELS)}",
    )
    parser.add_argument("command", choices=COMMANDS, help="What to do")
    parser.add_argument("target", help="Trace file (check/oracle/props) or model name")
    parser.add_argument(
        "second", nargs="?", help="Alpha file (props) or schedule file (simulate)"
    )
    parser.add_argument(
        "--processes", type=int, default=3, help="Process count for hunt/reduction (default: 3)"
    )
    parser.add_argument(
        "--bound-steps", type=int, default=8, help="Maximum schedule length (default: 8)"
    )
    parser.add_argument(
        "--bound-ops", type=int, default=1, help="Maximum operations per process (default: 1)"
    )
    parser.add_argument(
        "--domain",
        type=str,
        default="0,1,2",
        help="Comma-separated update values for reduction (default: 0,1,2)",
    )
    parser.add_argument(
        "--paranoid", action="store_true", help="Cross-check every hunt verdict with the oracle"
    )
    parser.add_argument(
        "--all-alphas", action="store_true", help="check: also count all correct alphas"
    )
    parser.add_argument(
        "--jobs", type=int, help="Worker processes (default: SNAPCHECK_JOBS or 1)"
    )
    parser.add_argument("--out", type=str, help="Also write the report to this file")
    parser.add_argument("--stats", type=str, help="hunt: write per-skeleton stats CSV")
    parser.add_argument("--log-level", type=str, help="Log level (default: SNAPCHECK_LOG_LEVEL)")
    parser.add_argument("--log-file", type=str, help="Also log to this file")
    parser.add_argument(
        "--verbose", action="store_true", help="Debug logging and tracebacks on errors"
    )
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_INPUT_ERROR

    try:
        defaults = CheckerConfig.from_env()
        level = "DEBUG" if args.verbose else (args.log_level or defaults.log_level)
        setup_logging(level=level, log_file=args.log_file, file_output=bool(args.log_file))
        config = CliConfig.from_args(args, defaults)

        match config.command:
            case "check":
                status, lines = cmd_check(config)
            case "oracle":
                status, lines = cmd_oracle(config, defaults)
            case "simulate":
                status, lines = cmd_simulate(config)
            case "hunt":
                status, lines = cmd_hunt(config, defaults)
            case "reduction":
                status, lines = cmd_reduction(config, defaults)
            case "props":
                status, lines = cmd_props(config)
        text = report_gateway.write_report(lines, config.out)
    except (CommandError, ValueError, KeyError, RuntimeError, OSError) as e:
        logger.error(f"{args.command} failed: {e}", exc_info=args.verbose)
        return EXIT_INPUT_ERROR

    sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
