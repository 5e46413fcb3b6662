"""Market data - loading, validating, transforming, and synthesizing prices.

Every backtest consumes a RelativeMatrix built here.
"""

from revertbench.market.io import (
    load_panel,
    load_prices,
    write_frame,
    write_prices,
    write_relatives,
)
from revertbench.market.models import (
    SUMMARY_COLUMNS,
    DatasetSummary,
    PriceMatrix,
    PricePanel,
    RelativeMatrix,
)
from revertbench.market.synth import MarketScenario, synth_market
from revertbench.market.transform import (
    describe,
    filter_by_listing,
    select_assets,
    split_universe,
    to_relatives,
)

__all__ = [
    "SUMMARY_COLUMNS",
    "DatasetSummary",
    "MarketScenario",
    "PriceMatrix",
    "PricePanel",
    "RelativeMatrix",
    "describe",
    "filter_by_listing",
    "load_panel",
    "load_prices",
    "select_assets",
    "split_universe",
    "synth_market",
    "to_relatives",
    "write_frame",
    "write_prices",
    "write_relatives",
]
