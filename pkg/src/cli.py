"""Command-line interface for moldable task scheduling."""

import argparse
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Optional, Sequence

from .config import Settings
from .errors import InvariantViolation, MoldSchedError
from .models import OracleLimits, parse_rational
from .utils.file_utils import FileUtils
from .utils.workbench_service import WorkbenchService

logger = logging.getLogger("src.cli")

EXIT_OK = 0
EXIT_INTERNAL = 4


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from e


def _seed_range(text: str) -> range:
    """Parse "A..B" (inclusive) or a single seed."""
    try:
        if ".." in text:
            low, high = text.split("..", 1)
            return range(int(low), int(high) + 1)
        return range(int(text), int(text) + 1)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"invalid seed range {text!r}; expected A..B") from e


def _limits(text: str) -> OracleLimits:
    """Parse "tasks=4,procs=8[,width=3]"."""
    names = {"tasks": "max_tasks", "procs": "max_procs", "width": "max_width"}
    values: Dict[str, int] = {}
    try:
        for part in filter(None, text.split(",")):
            key, value = part.split("=", 1)
            values[names[key.strip()]] = int(value)
        return OracleLimits(**values)
    except (KeyError, ValueError) as e:
        raise argparse.ArgumentTypeError(f"invalid limits {text!r}; expected tasks=N,procs=N[,width=N]") from e


class MoldSchedCLI:
    """Command-line interface for moldable task scheduling."""

    def __init__(self, settings: Optional[Settings] = None):
        """Initialize the CLI."""
        self.settings = settings or Settings()
        self.service = WorkbenchService(self.settings)
        self.file_utils = FileUtils()

    def run(self, args: argparse.Namespace) -> int:
        """Dispatch a parsed command and emit its report.

        Returns:
            Process exit code
        """
        handler = getattr(self, f"cmd_{args.command}")
        try:
            report = handler(args)
        except MoldSchedError as e:
            logger.error("%s", e)
            print(f"error: {e}", file=sys.stderr)
            return e.exit_code
        except Exception as e:  # noqa: BLE001
            logger.exception("unexpected failure")
            print(f"internal error: {e}", file=sys.stderr)
            return EXIT_INTERNAL

        self._emit(report, args)
        status = report.get("status")
        if status in ("failed", "mismatch"):
            return InvariantViolation.exit_code
        return EXIT_OK

    def _emit(self, report: Dict[str, Any], args: argparse.Namespace) -> None:
        title = f"{args.command.title()} Report"
        if args.report:
            path = Path(args.report)
            if path.parent == Path("."):
                path = Path(self.settings.reports_dir) / path
            path = self.file_utils.save_report(report, path, title)
            logger.info("report saved to %s", path)
        if args.format == "markdown":
            from .analyzers.report_generator import ReportGenerator

            sys.stdout.write(ReportGenerator().generate_markdown_report(report, title) + "\n")
        else:
            sys.stdout.write(self.file_utils.dumps(report))

    def cmd_params(self, args: argparse.Namespace) -> Dict[str, Any]:
        return self.service.params_report(args.delta, args.k, args.m)

    def cmd_classify(self, args: argparse.Namespace) -> Dict[str, Any]:
        tasks = self.file_utils.load_instance(args.instance)
        return self.service.classify_report(tasks, args.deadline)

    def cmd_schedule(self, args: argparse.Namespace) -> Dict[str, Any]:
        tasks = self.file_utils.load_instance(args.instance)
        schedule = self.service.schedule(tasks, args.deadline, args.shuffle_seed)
        if args.output:
            self.file_utils.save_schedule(schedule, args.output)
        return self.service.schedule_report(tasks, schedule)

    def cmd_makespan(self, args: argparse.Namespace) -> Dict[str, Any]:
        tasks = self.file_utils.load_instance(args.instance)
        result = self.service.makespan(tasks, args.epsilon)
        if args.output:
            self.file_utils.save_schedule(result.schedule, args.output)
        return self.service.makespan_report(tasks, result)

    def cmd_welfare(self, args: argparse.Namespace) -> Dict[str, Any]:
        tasks = self.file_utils.load_instance(args.instance)
        result = self.service.welfare(tasks, args.tau)
        if args.output:
            self.file_utils.save_schedule(result.schedule, args.output)
        return self.service.welfare_report(tasks, result)

    def cmd_gen(self, args: argparse.Namespace) -> Dict[str, Any]:
        spec = self.file_utils.load_generator_spec(args.spec)
        seed = args.seed
        if seed is None and "seed" in self.settings.model_fields_set:
            seed = self.settings.seed
        tasks = self.service.generate(spec, seed)
        self.file_utils.save_instance(tasks, args.output)
        return {
            "output": str(args.output),
            "seed": spec.seed if seed is None else seed,
            "n": tasks.n,
            "delta": tasks.delta,
            "k": tasks.k,
            "m": tasks.m,
        }

    def cmd_verify(self, args: argparse.Namespace) -> Dict[str, Any]:
        return self.service.verify_report(args.seeds, args.limits, args.workers)

    def cmd_tables(self, args: argparse.Namespace) -> Dict[str, Any]:
        return self.service.tables_report()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="python -m src.cli",
        description="Moldable task scheduling workbench",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Parameters and utilization bound for delta=5, k=5, m=11
  python -m src.cli params --delta 5 --k 5 --m 11

  # Schedule an instance within deadline 1 and save the schedule
  python -m src.cli schedule -i sample_instances/example.json -d 1 -o schedule.json

  # Minimize the makespan with tolerance 1/100
  python -m src.cli makespan -i sample_instances/example.json --epsilon 1/100

  # Compare against brute force on seeds 0..199
  python -m src.cli verify --seeds 0..199 --limits tasks=4,procs=8 --workers 4
        """,
    )
    parser.add_argument("--log-level", default=None, help="Logging level (default: MOLDSCHED_LOG_LEVEL or WARNING)")
    parser.add_argument("--format", choices=["json", "markdown"], default="json", help="Stdout format (default: json)")
    parser.add_argument("--report", help="Also save the report (.json, .md or .html); bare names go to reports_dir")

    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    params_parser = subparsers.add_parser("params", help="Run the parameter search")
    params_parser.add_argument("--delta", type=int, required=True)
    params_parser.add_argument("--k", type=int, help="Parallelism bound, enables mu/beta1/beta2")
    params_parser.add_argument("--m", type=int, help="Processor count, enables theta")

    for name, help_text in (("classify", "Classify tasks at a deadline"), ("schedule", "Run UnitAlgo at a deadline")):
        sub = subparsers.add_parser(name, help=help_text)
        sub.add_argument("--instance", "-i", required=True, help="Task set JSON file")
        sub.add_argument("--deadline", "-d", type=_rational, required=True, help="Deadline, e.g. 1 or 11/10")
        if name == "schedule":
            sub.add_argument("--output", "-o", help="Write the schedule JSON here")
            sub.add_argument("--shuffle-seed", type=int, help="Shuffle within classes with this seed")

    makespan_parser = subparsers.add_parser("makespan", help="Minimize the makespan by bisection")
    makespan_parser.add_argument("--instance", "-i", required=True)
    makespan_parser.add_argument("--epsilon", type=_rational, help="Relative tolerance (default: MOLDSCHED_EPSILON)")
    makespan_parser.add_argument("--output", "-o", help="Write the schedule JSON here")

    welfare_parser = subparsers.add_parser("welfare", help="Maximize social welfare within tau")
    welfare_parser.add_argument("--instance", "-i", required=True)
    welfare_parser.add_argument("--tau", type=_rational, required=True)
    welfare_parser.add_argument("--output", "-o", help="Write the schedule JSON here")

    gen_parser = subparsers.add_parser("gen", help="Generate an instance from a generator spec")
    gen_parser.add_argument("--spec", required=True, help="Generator spec JSON file")
    gen_parser.add_argument("--seed", type=int, help="Overrides MOLDSCHED_SEED and the spec's seed")
    gen_parser.add_argument("--output", "-o", type=Path, required=True)

    verify_parser = subparsers.add_parser("verify", help="Compare algorithms against brute force")
    verify_parser.add_argument("--seeds", type=_seed_range, default=range(0, 20), help="Seed range A..B (default: 0..19)")
    verify_parser.add_argument("--limits", type=_limits, help="Oracle limits, e.g. tasks=4,procs=8")
    verify_parser.add_argument("--workers", type=int, help="Worker processes (default: MOLDSCHED_VERIFY_WORKERS)")

    subparsers.add_parser("tables", help="Recompute the reference constant tables")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main CLI entry point."""
    parser = build_parser()
    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help()
        return 1

    settings = Settings()
    logging.basicConfig(
        level=(args.log_level or settings.log_level).upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    return MoldSchedCLI(settings).run(args)


if __name__ == "__main__":
    sys.exit(main())
