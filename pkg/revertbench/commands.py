"""Command handlers for the revertbench CLI.

Each ``cmd_*`` function takes already-parsed values, does its work, and
returns an ExitCode. ``RevertbenchError`` propagates to ``__main__``, which
turns it into a one-line diagnostic and the matching exit status.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from rich.console import Console
from rich.table import Table

from revertbench import profiling
from revertbench.backtest import (
    BacktestResult,
    CostModel,
    down_day_probe,
    format_wealth,
    gamma_tag,
    run,
    single_asset_bah,
    summarize,
    summary_rich_table,
    write_describe,
    write_result,
    write_summary,
)
from revertbench.config import CONFIG, default_workers
from revertbench.enums import ExitCode, InputKind, MarketProcess, StrategyKind, TableFormat
from revertbench.errors import RevertbenchError, ValidationError, log_exception
from revertbench.market import (
    SUMMARY_COLUMNS,
    MarketScenario,
    PriceMatrix,
    RelativeMatrix,
    describe,
    filter_by_listing,
    load_panel,
    load_prices,
    select_assets,
    split_universe,
    synth_market,
    to_relatives,
    write_prices,
    write_relatives,
)
from revertbench.strategies import StrategySpec, parse_strategy
from revertbench.tasks import map_ordered

log = logging.getLogger(__name__)

SYNTHETIC_PREFIX = "synthetic:"
DEFAULT_GAMMAS = (0.0,)
DEFAULT_OUT = Path("results")
DEFAULT_SEED = 0

console = Console()


# ---------------------------------------------------------------------------
# Data sources
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DataSource:
    """A dataset to load: a CSV path or ``synthetic:<process>[:<n>x<m>]``."""

    location: str
    kind: InputKind = InputKind.PRICES

    @property
    def is_synthetic(self) -> bool:
        return self.location.startswith(SYNTHETIC_PREFIX)

    @property
    def name(self) -> str:
        """Dataset label used in tables and output file names."""
        if self.is_synthetic:
            scenario = parse_synthetic(self.location)
            return f"synthetic-{scenario.process}-{scenario.n}x{scenario.m}"
        return Path(self.location).stem


def parse_synthetic(location: str) -> MarketScenario:
    """Parse ``synthetic:<process>[:<n>x<m>]`` into a scenario."""
    parts = location[len(SYNTHETIC_PREFIX) :].split(":")
    if len(parts) > 2 or not parts[0]:
        raise ValidationError(
            f"bad synthetic source '{location}' "
            "(expected synthetic:<process>[:<n>x<m>])"
        )
    try:
        process = MarketProcess(parts[0])
    except ValueError:
        choices = ", ".join(p.value for p in MarketProcess)
        raise ValidationError(
            f"unknown market process '{parts[0]}' (choose from {choices})"
        ) from None
    if len(parts) == 1:
        return MarketScenario(process)
    try:
        n, m = (int(v) for v in parts[1].lower().split("x"))
    except ValueError:
        raise ValidationError(
            f"bad synthetic size '{parts[1]}' (expected <days>x<assets>)"
        ) from None
    return MarketScenario(process, n=n, m=m)


def load_source(source: DataSource, seed: int = DEFAULT_SEED) -> RelativeMatrix:
    """Relatives for a data source, converting prices when needed."""
    if source.is_synthetic:
        return to_relatives(synth_market(parse_synthetic(source.location), seed))
    data = load_prices(source.location, source.kind)
    if isinstance(data, PriceMatrix):
        return to_relatives(data)
    return data


# ---------------------------------------------------------------------------
# Run configuration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RunConfig:
    """Everything ``cmd_run`` needs; validated on construction."""

    datasets: tuple[DataSource, ...]
    strategies: tuple[StrategySpec, ...]
    gammas: tuple[float, ...] = DEFAULT_GAMMAS
    out: Path = DEFAULT_OUT
    fmt: TableFormat = TableFormat.CSV
    workers: int = 1
    seed: int = DEFAULT_SEED
    profile: bool = False

    def __post_init__(self) -> None:
        if not self.datasets:
            raise ValidationError("at least one dataset is required (--data)")
        if not self.strategies:
            raise ValidationError("at least one strategy is required (--strategy)")
        if not self.gammas:
            raise ValidationError("at least one gamma is required (--gamma)")
        for gamma in self.gammas:
            if not 0 <= gamma <= 1:
                raise ValidationError(f"gamma must lie in [0, 1], got {gamma}")
        if len(set(self.gammas)) != len(self.gammas):
            raise ValidationError("each gamma may be listed only once")
        if self.workers < 1:
            raise ValidationError(f"workers must be at least 1, got {self.workers}")
        names = [d.name for d in self.datasets]
        duplicates = sorted({n for n in names if names.count(n) > 1})
        if duplicates:
            raise ValidationError(f"duplicate dataset names: {', '.join(duplicates)}")
        labels = [s.label for s in self.strategies]
        if len(set(labels)) != len(labels):
            raise ValidationError("each strategy may be listed only once")


def _as_list(value: Any, split: bool = True) -> list:
    """Flatten a flag or manifest value into a list of scalars."""
    if value is None:
        return []
    items = value if isinstance(value, (list, tuple)) else [value]
    out = []
    for item in items:
        if split and isinstance(item, str):
            out.extend(tok.strip() for tok in item.split(",") if tok.strip())
        else:
            out.append(item)
    return out


def _pick(args: argparse.Namespace, manifest: dict[str, Any], key: str) -> Any:
    """CLI flag if given, else the manifest value, else None."""
    value = getattr(args, key.replace("-", "_"), None)
    if value is None or value == []:
        value = manifest.get(key)
    return value


def _number(value: Any, what: str, kind: type = float) -> Any:
    try:
        return kind(value)
    except (TypeError, ValueError):
        raise ValidationError(f"invalid {what} '{value}'") from None


def _strategy_specs(
    names: list, epsilon: Any, window: Any, eta: Any, literal_eq10: bool
) -> tuple[StrategySpec, ...]:
    specs = []
    for name in names:
        kind = parse_strategy(str(name))
        params: dict[str, Any] = {"literal_eq10": literal_eq10}
        if epsilon is not None and kind in (StrategyKind.PAMR, StrategyKind.OLMAR):
            params["epsilon"] = _number(epsilon, "epsilon")
        if window is not None and kind in (StrategyKind.SMAR, StrategyKind.OLMAR):
            params["window"] = _number(window, "window", int)
        if eta is not None and kind in (StrategyKind.TCO1, StrategyKind.TCO2):
            params["eta"] = _number(eta, "eta")
        specs.append(StrategySpec(kind, **params))
    return tuple(specs)


def build_run_config(
    args: argparse.Namespace, manifest: dict[str, Any] | None = None
) -> RunConfig:
    """Merge flags over manifest values over user settings."""
    manifest = manifest or {}

    kind = InputKind(_pick(args, manifest, "input-kind") or InputKind.PRICES)
    datasets = tuple(
        DataSource(str(loc), kind)
        for loc in _as_list(_pick(args, manifest, "data"), split=False)
    )
    gammas = tuple(
        _number(g, "gamma") for g in _as_list(_pick(args, manifest, "gamma"))
    )
    literal_eq10 = bool(
        getattr(args, "tco2_literal_eq10", False)
        or manifest.get("tco2-literal-eq10", False)
    )
    strategies = _strategy_specs(
        _as_list(_pick(args, manifest, "strategy")),
        _pick(args, manifest, "epsilon"),
        _pick(args, manifest, "window"),
        _pick(args, manifest, "eta"),
        literal_eq10,
    )

    fmt = _pick(args, manifest, "format") or CONFIG["output"]["format"]
    try:
        fmt = TableFormat(fmt)
    except ValueError:
        raise ValidationError(f"unknown table format '{fmt}'") from None

    workers = _pick(args, manifest, "workers")
    if workers is None:
        workers = CONFIG.get("workers")
    workers = default_workers() if workers is None else _number(workers, "workers", int)
    seed = _pick(args, manifest, "seed")
    out = _pick(args, manifest, "out")
    return RunConfig(
        datasets=datasets,
        strategies=strategies,
        gammas=gammas or DEFAULT_GAMMAS,
        out=Path(out) if out else DEFAULT_OUT,
        fmt=fmt,
        workers=workers,
        seed=_number(seed, "seed", int) if seed is not None else DEFAULT_SEED,
        profile=bool(getattr(args, "profile", False)),
    )


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RunJob:
    """One cell of the experiment grid, shipped to a worker process."""

    dataset: str
    data: RelativeMatrix
    spec: StrategySpec
    gamma: float = 0.0


def run_job(job: RunJob) -> BacktestResult:
    return run(job.data, job.spec, CostModel(job.gamma), job.dataset)


def result_filename(result: BacktestResult) -> str:
    return f"{result.dataset}__{result.strategy.label}__g{gamma_tag(result.gamma)}.csv"


def summary_filename(gamma: float, fmt: TableFormat) -> str:
    return f"summary__g{gamma_tag(gamma)}{fmt.suffix}"


def cmd_run(config: RunConfig) -> ExitCode:
    """Run the dataset x gamma x strategy grid, then write every output.

    Nothing is written until every run has finished.
    """
    loaded = [(source.name, load_source(source, config.seed)) for source in config.datasets]
    jobs = [
        RunJob(name, data, spec, gamma)
        for name, data in loaded
        for gamma in config.gammas
        for spec in config.strategies
    ]
    log.info(f"Running {len(jobs)} backtests on {config.workers} worker(s)")

    with profiling.timed("grid"):
        results = map_ordered(run_job, jobs, config.workers, name="backtest-grid")
    for result in results:
        profiling.record(f"run {result.strategy.label}", result.elapsed)
    tables = summarize(results)

    config.out.mkdir(parents=True, exist_ok=True)
    for result in results:
        write_result(result, config.out / result_filename(result))
    for table in tables:
        path = config.out / summary_filename(table.gamma, config.fmt)
        write_summary(table, path, config.fmt)
        console.print(summary_rich_table(table))

    console.print(
        f"Wrote {len(results)} run files and {len(tables)} summary tables to {config.out}"
    )
    if config.profile:
        console.print(profiling.get_stats_table())
    return ExitCode.OK


def describe_filename(fmt: TableFormat) -> str:
    return f"datasets{fmt.suffix}"


def cmd_describe(
    sources: list[DataSource],
    seed: int = DEFAULT_SEED,
    out: Path | None = None,
    fmt: TableFormat = TableFormat.CSV,
) -> ExitCode:
    """Describe each dataset; a failing file is reported and the rest go on.

    With ``out`` the described rows are also written to
    ``out/datasets.csv`` (or ``.md``).
    """
    if not sources:
        raise ValidationError("at least one dataset is required (--data)")

    status = ExitCode.OK
    summaries = []
    for source in sources:
        try:
            summaries.append(describe(load_source(source, seed), source.name))
        except RevertbenchError as e:
            status = max(status, report_error(e, context=source.location))

    table = Table(title="Datasets", title_justify="left")
    for column in SUMMARY_COLUMNS:
        table.add_column(column, justify="left" if column in ("Name", "Period") else "right")
    for summary in summaries:
        table.add_row(*summary.as_row())
    console.print(table)

    if out is not None and summaries:
        path = Path(out) / describe_filename(fmt)
        write_describe(summaries, path, fmt)
        console.print(f"Wrote {len(summaries)} dataset rows to {path}")
    return ExitCode(status)


def cmd_split(
    path: Path,
    k: int,
    out: Path,
    kind: InputKind = InputKind.PRICES,
    cutoff: str | None = None,
) -> ExitCode:
    """Write ``<stem>(i).csv`` for each of the k sorted asset groups.

    With ``cutoff`` the file may contain missing cells; assets not listed by
    the cutoff are dropped first.
    """
    path = Path(path)
    if cutoff is not None:
        if kind is not InputKind.PRICES:
            raise ValidationError("--filter-cutoff needs a prices file")
        data: PriceMatrix | RelativeMatrix = filter_by_listing(load_panel(path), cutoff)
    else:
        data = load_prices(path, kind)

    groups = split_universe(data, k)
    out.mkdir(parents=True, exist_ok=True)
    for i, group in enumerate(groups):
        target = out / f"{path.stem}({i}).csv"
        if isinstance(group, PriceMatrix):
            write_prices(group, target)
        else:
            write_relatives(group, target)
        log.info(f"Wrote {group.m} assets to {target}")
    sizes = ", ".join(str(g.m) for g in groups)
    console.print(f"Split {data.m} assets into {k} files ({sizes}) in {out}")
    return ExitCode.OK


def cmd_synth(scenario: MarketScenario, out: Path, seed: int = DEFAULT_SEED) -> ExitCode:
    """Write a synthetic price CSV."""
    prices = synth_market(scenario, seed)
    write_prices(prices, out)
    console.print(f"Wrote {prices.n} days x {prices.m} assets ({scenario.process}) to {out}")
    return ExitCode.OK


def cmd_probe(source: DataSource, asset: str, seed: int = DEFAULT_SEED) -> ExitCode:
    """Down-day probe and buy-and-hold wealth for one asset."""
    relatives = select_assets(load_source(source, seed), [asset])
    probe = down_day_probe(relatives)
    bah = single_asset_bah(relatives)
    console.print(
        f"{asset}: down-day probe {format_wealth(probe)}, "
        f"buy-and-hold {format_wealth(bah)}"
    )
    return ExitCode.OK


def report_error(e: RevertbenchError, context: str = "") -> ExitCode:
    """Log an error and print its one-line diagnostic to stderr."""
    message = log_exception(e, context)
    print(f"error: {message}", file=sys.stderr)
    return e.exit_code
