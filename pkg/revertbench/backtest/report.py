"""Summary tables and per-run exports.

Tables are dataset x strategy grids of final wealth, one per cost rate, with
the two best strategies of each dataset row highlighted.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from collections.abc import Sequence
from pathlib import Path

import numpy as np
import pandas as pd
from rich.table import Table

from revertbench.backtest.engine import BacktestResult
from revertbench.config import atomic_write
from revertbench.enums import TableFormat
from revertbench.errors import ValidationError
from revertbench.market.io import write_frame
from revertbench.market.models import SUMMARY_COLUMNS, DatasetSummary

log = logging.getLogger(__name__)

RECORD_COLUMNS = ("day", "gross_return", "turnover", "net_return", "wealth")
MISSING_CELL = "-"


def format_wealth(wealth: float) -> str:
    """Two decimals, or d.dde±dd for values >= 1000 or below 0.005."""
    if wealth == 0:
        return "0.00"
    if wealth >= 1000 or wealth < 0.005:
        return f"{wealth:.2e}"
    return f"{wealth:.2f}"


def gamma_tag(gamma: float) -> str:
    """Compact cost-rate label used in file names: 0, 0.0025, 0.01."""
    return f"{gamma:g}"


@dataclass(frozen=True)
class SummaryTable:
    """Final wealth per (dataset, strategy) at one cost rate.

    ``wealth`` has one row per dataset and one column per strategy; a
    combination that was not run holds NaN.
    """

    gamma: float
    datasets: tuple[str, ...]
    strategies: tuple[str, ...]
    wealth: np.ndarray

    def top_two(self, row: int) -> tuple[int, ...]:
        """Column indices of the two largest wealths; ties go to the left."""
        values = self.wealth[row]
        present = np.flatnonzero(~np.isnan(values))
        order = present[np.argsort(-values[present], kind="stable")]
        return tuple(int(i) for i in order[:2])

    def cell(self, row: int, col: int) -> str:
        value = self.wealth[row, col]
        return MISSING_CELL if np.isnan(value) else format_wealth(float(value))

    @property
    def caption(self) -> str:
        return f"Cumulative wealth (gamma = {gamma_tag(self.gamma)})"


def summarize(results: list[BacktestResult]) -> list[SummaryTable]:
    """Group results into one table per gamma, sorted by gamma.

    Datasets and strategies keep the order in which they first appear.
    """
    if not results:
        raise ValidationError("nothing to summarize")

    datasets: dict[str, None] = {}
    strategies: dict[str, None] = {}
    cells: dict[float, dict[tuple[str, str], float]] = {}
    for result in results:
        label = result.strategy.label
        datasets.setdefault(result.dataset)
        strategies.setdefault(label)
        grid = cells.setdefault(result.gamma, {})
        key = (result.dataset, label)
        if key in grid:
            raise ValidationError(
                f"duplicate result for {label} on {result.dataset} "
                f"at gamma={gamma_tag(result.gamma)}"
            )
        grid[key] = result.final_wealth

    rows = tuple(datasets)
    cols = tuple(strategies)
    tables = []
    for gamma in sorted(cells):
        wealth = np.full((len(rows), len(cols)), np.nan)
        for (dataset, label), value in cells[gamma].items():
            wealth[rows.index(dataset), cols.index(label)] = value
        tables.append(SummaryTable(gamma, rows, cols, wealth))
    log.info(
        f"Summarized {len(results)} runs into {len(tables)} table(s) "
        f"of {len(rows)} x {len(cols)}"
    )
    return tables


def records_frame(result: BacktestResult) -> pd.DataFrame:
    return pd.DataFrame(
        [
            (r.day, r.gross_return, r.turnover, r.net_return, r.wealth)
            for r in result.records
        ],
        columns=list(RECORD_COLUMNS),
    )


def write_result(result: BacktestResult, path: Path | str) -> None:
    write_frame(records_frame(result), path, index=False)


def summary_frame(table: SummaryTable) -> pd.DataFrame:
    """Raw wealths plus a ``top_two`` column naming the highlighted strategies."""
    frame = pd.DataFrame(
        table.wealth,
        index=pd.Index(list(table.datasets), name="dataset"),
        columns=list(table.strategies),
    )
    frame["top_two"] = [
        ";".join(table.strategies[c] for c in table.top_two(i))
        for i in range(len(table.datasets))
    ]
    return frame


def render_markdown(table: SummaryTable) -> str:
    """Markdown grid with the top two of each row in bold."""
    lines = [
        table.caption,
        "",
        "| Dataset | " + " | ".join(table.strategies) + " |",
        "|---|" + "---:|" * len(table.strategies),
    ]
    for i, dataset in enumerate(table.datasets):
        best = table.top_two(i)
        cells = [
            f"**{table.cell(i, j)}**" if j in best else table.cell(i, j)
            for j in range(len(table.strategies))
        ]
        lines.append(f"| {dataset} | " + " | ".join(cells) + " |")
    return "\n".join(lines) + "\n"


def write_summary(
    table: SummaryTable, path: Path | str, fmt: TableFormat | str = TableFormat.CSV
) -> None:
    fmt = TableFormat(fmt)
    if fmt is TableFormat.MARKDOWN:
        atomic_write(Path(path), render_markdown(table))
    else:
        write_frame(summary_frame(table), path)


def summary_rich_table(table: SummaryTable) -> Table:
    """Console rendering; the top two of each row are bold."""
    rich_table = Table(title=table.caption, title_justify="left")
    rich_table.add_column("Dataset", style="dim")
    for label in table.strategies:
        rich_table.add_column(label, justify="right")
    for i, dataset in enumerate(table.datasets):
        best = table.top_two(i)
        rich_table.add_row(
            dataset,
            *(
                f"[bold]{table.cell(i, j)}[/]" if j in best else table.cell(i, j)
                for j in range(len(table.strategies))
            ),
        )
    return rich_table


def describe_frame(summaries: Sequence[DatasetSummary]) -> pd.DataFrame:
    """Dataset descriptions with raw max/min relatives."""
    rows = [
        (s.name, s.period_label, s.days, s.assets, s.max_relative, s.min_relative)
        for s in summaries
    ]
    return pd.DataFrame(rows, columns=list(SUMMARY_COLUMNS))


def render_describe_markdown(summaries: Sequence[DatasetSummary]) -> str:
    lines = [
        "Datasets",
        "",
        "| " + " | ".join(SUMMARY_COLUMNS) + " |",
        "|---|---|" + "---:|" * (len(SUMMARY_COLUMNS) - 2),
    ]
    lines.extend("| " + " | ".join(s.as_row()) + " |" for s in summaries)
    return "\n".join(lines) + "\n"


def write_describe(
    summaries: Sequence[DatasetSummary],
    path: Path | str,
    fmt: TableFormat | str = TableFormat.CSV,
) -> None:
    if TableFormat(fmt) is TableFormat.MARKDOWN:
        atomic_write(Path(path), render_describe_markdown(summaries))
    else:
        write_frame(describe_frame(summaries), path, index=False)
