"""Backtest engine and reporting.

``run`` drives one strategy over one dataset; ``summarize`` turns a grid of
results into the per-cost-rate wealth tables.
"""

from revertbench.backtest.engine import (
    BacktestResult,
    CostModel,
    DayRecord,
    day_factor,
    down_day_probe,
    run,
    single_asset_bah,
    single_asset_down_day_probe,
)
from revertbench.backtest.report import (
    RECORD_COLUMNS,
    SummaryTable,
    describe_frame,
    format_wealth,
    gamma_tag,
    records_frame,
    render_describe_markdown,
    render_markdown,
    summarize,
    summary_frame,
    summary_rich_table,
    write_describe,
    write_result,
    write_summary,
)

__all__ = [
    "RECORD_COLUMNS",
    "BacktestResult",
    "CostModel",
    "DayRecord",
    "SummaryTable",
    "day_factor",
    "describe_frame",
    "down_day_probe",
    "format_wealth",
    "gamma_tag",
    "records_frame",
    "render_describe_markdown",
    "render_markdown",
    "run",
    "single_asset_bah",
    "single_asset_down_day_probe",
    "summarize",
    "summary_frame",
    "summary_rich_table",
    "write_describe",
    "write_result",
    "write_summary",
]
