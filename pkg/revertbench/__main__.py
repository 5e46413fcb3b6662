"""Entry point for the revertbench CLI."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from revertbench import __version__
from revertbench.commands import (
    DataSource,
    build_run_config,
    cmd_describe,
    cmd_probe,
    cmd_run,
    cmd_split,
    cmd_synth,
    report_error,
)
from revertbench.config import CONFIG, load_manifest
from revertbench.enums import ExitCode, InputKind, MarketProcess, TableFormat
from revertbench.errors import RevertbenchError, ValidationError, setup_logging
from revertbench.market import MarketScenario
from revertbench.strategies import DEFAULT_ETA, DEFAULT_WINDOW


class _Parser(argparse.ArgumentParser):
    """Reports usage errors as ValidationError so they exit with code 1."""

    def error(self, message: str):
        raise ValidationError(message)


def _add_data_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--data",
        action="append",
        default=None,
        help="CSV file or synthetic:<process>[:<days>x<assets>]; repeatable",
    )
    parser.add_argument(
        "--input-kind",
        choices=[k.value for k in InputKind],
        default=None,
        help="Whether files hold prices or price relatives (default: prices)",
    )
    parser.add_argument("--seed", type=int, default=None, help="Seed for synthetic data")
    parser.add_argument("--config", type=Path, help="Experiment manifest (YAML)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="revertbench", description="Online portfolio selection backtests")
    parser.add_argument(
        "--version", "-V", action="version", version=f"revertbench {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="Run a dataset x strategy x gamma grid")
    _add_data_args(p_run)
    p_run.add_argument(
        "--strategy", help="Comma-separated strategies, e.g. BAH_U,PAMR,TCO-1"
    )
    p_run.add_argument("--gamma", help="Comma-separated cost rates in [0, 1]")
    p_run.add_argument("--epsilon", type=float, help="PAMR/OLMAR epsilon")
    p_run.add_argument(
        "--window", type=int, help=f"SMAR/OLMAR window (default: {DEFAULT_WINDOW})"
    )
    p_run.add_argument("--eta", type=float, help=f"TCO eta (default: {DEFAULT_ETA:g})")
    p_run.add_argument(
        "--tco2-literal-eq10",
        action="store_true",
        help="TCO-2 divides the moving average by today's relatives",
    )
    p_run.add_argument("--format", choices=[f.value for f in TableFormat], default=None)
    p_run.add_argument("--out", type=Path, help="Output directory (default: results)")
    p_run.add_argument("--workers", type=int, help="Worker processes (default: cores)")
    p_run.add_argument("--profile", action="store_true", help="Print timing statistics")

    p_desc = sub.add_parser("describe", help="Summarize datasets")
    _add_data_args(p_desc)
    p_desc.add_argument("paths", nargs="*", help="More data files")
    p_desc.add_argument("--format", choices=[f.value for f in TableFormat], default=None)
    p_desc.add_argument("--out", type=Path, help="Directory for the datasets table")

    p_split = sub.add_parser("split", help="Sort assets and split into k files")
    p_split.add_argument("path", type=Path, help="Price (or relatives) CSV")
    p_split.add_argument("-k", "--groups", type=int, required=True, help="Group count")
    p_split.add_argument("--out", type=Path, default=Path("."), help="Output directory")
    p_split.add_argument(
        "--input-kind", choices=[k.value for k in InputKind], default=InputKind.PRICES.value
    )
    p_split.add_argument(
        "--filter-cutoff",
        metavar="DATE",
        help="Drop assets with missing prices on or before this ISO date first",
    )

    p_synth = sub.add_parser("synth", help="Write a synthetic price CSV")
    p_synth.add_argument(
        "--process",
        choices=[p.value for p in MarketProcess],
        default=MarketProcess.RANDOM_WALK.value,
    )
    p_synth.add_argument("--days", type=int, default=250)
    p_synth.add_argument("--assets", type=int, default=5)
    p_synth.add_argument("--seed", type=int, default=0)
    p_synth.add_argument("--out", type=Path, required=True, help="CSV file to write")

    p_probe = sub.add_parser("probe", help="Single-asset down-day probe")
    _add_data_args(p_probe)
    p_probe.add_argument("--asset", required=True, help="Asset column to probe")

    return parser


def _sources(args: argparse.Namespace, manifest: dict) -> list[DataSource]:
    locations = list(args.data or [])
    if not locations:
        value = manifest.get("data") or []
        locations = [str(v) for v in (value if isinstance(value, list) else [value])]
    locations += getattr(args, "paths", [])
    kind = InputKind(args.input_kind or manifest.get("input-kind") or InputKind.PRICES)
    return [DataSource(loc, kind) for loc in locations]


def _seed(args: argparse.Namespace, manifest: dict) -> int:
    seed = args.seed if args.seed is not None else manifest.get("seed", 0)
    return int(seed)


def _format(args: argparse.Namespace, manifest: dict) -> TableFormat:
    fmt = args.format or manifest.get("format") or CONFIG["output"]["format"]
    try:
        return TableFormat(fmt)
    except ValueError:
        raise ValidationError(f"unknown table format '{fmt}'") from None


def dispatch(args: argparse.Namespace) -> ExitCode:
    manifest = load_manifest(args.config) if getattr(args, "config", None) else {}
    match args.command:
        case "run":
            return cmd_run(build_run_config(args, manifest))
        case "describe":
            out = args.out or manifest.get("out")
            return cmd_describe(
                _sources(args, manifest),
                _seed(args, manifest),
                Path(out) if out else None,
                _format(args, manifest),
            )
        case "split":
            kind = InputKind(args.input_kind)
            return cmd_split(args.path, args.groups, args.out, kind, args.filter_cutoff)
        case "synth":
            scenario = MarketScenario(args.process, n=args.days, m=args.assets)
            return cmd_synth(scenario, args.out, args.seed)
        case "probe":
            sources = _sources(args, manifest)
            if len(sources) != 1:
                raise ValidationError("probe takes exactly one --data source")
            return cmd_probe(sources[0], args.asset, _seed(args, manifest))
    raise ValidationError(f"unknown command '{args.command}'")


def main(argv: list[str] | None = None) -> int:
    setup_logging()
    try:
        args = build_parser().parse_args(argv)
        return int(dispatch(args))
    except RevertbenchError as e:
        return int(report_error(e))
    except KeyboardInterrupt:
        return int(ExitCode.VALIDATION)
    except Exception:
        import tempfile
        import traceback

        crash_log = Path(tempfile.gettempdir()) / "revertbench-crash.log"
        with open(crash_log, "w", encoding="utf-8") as f:
            traceback.print_exc(file=f)
        traceback.print_exc()
        return int(ExitCode.VALIDATION)


if __name__ == "__main__":
    sys.exit(main())
