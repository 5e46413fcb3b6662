"""Pure transformations of price data: relatives, summaries, universe splits."""

from __future__ import annotations

import logging
from typing import TypeVar

import numpy as np

from revertbench.errors import DataError, EmptyUniverseError, ValidationError
from revertbench.market.models import (
    DatasetSummary,
    PriceMatrix,
    PricePanel,
    RelativeMatrix,
)

log = logging.getLogger(__name__)

_Data = TypeVar("_Data", PriceMatrix, RelativeMatrix)


def to_relatives(prices: PriceMatrix) -> RelativeMatrix:
    """Daily price relatives; one row fewer than the input.

    Row t is labelled with the date of prices[t].
    """
    if prices.n < 2:
        raise DataError("at least 2 price rows are required")
    values = prices.values[1:] / prices.values[:-1]
    return RelativeMatrix(prices.names, values, prices.dates[1:])


def describe(
    data: RelativeMatrix, name: str, period: tuple[str, str] | None = None
) -> DatasetSummary:
    """Summary statistics in the Name/Period/Days/Assets/Max/Min layout."""
    if period is None:
        period = (data.dates[0], data.dates[-1])
    return DatasetSummary(
        name=name,
        period=period,
        days=data.n,
        assets=data.m,
        max_relative=float(data.values.max()),
        min_relative=float(data.values.min()),
    )


def _ticker_key(name: str) -> tuple[bytes, bytes]:
    # Case-insensitive byte order; the raw bytes break case-only ties
    return name.lower().encode("utf-8"), name.encode("utf-8")


def split_universe(prices: _Data, k: int) -> list[_Data]:
    """Sort assets by ticker and cut them into k contiguous groups.

    The first ``m mod k`` groups get one extra asset.
    """
    m = prices.m
    if k < 1:
        raise ValidationError(f"group count must be at least 1, got {k}")
    if k > m:
        raise ValidationError(f"cannot split {m} assets into {k} groups")

    order = sorted(range(m), key=lambda j: _ticker_key(prices.names[j]))
    size, extra = divmod(m, k)
    groups = []
    start = 0
    for g in range(k):
        stop = start + size + (1 if g < extra else 0)
        groups.append(select_assets(prices, [prices.names[j] for j in order[start:stop]]))
        start = stop
    log.info(f"Split {m} assets into {k} groups of {size}-{size + (extra > 0)}")
    return groups


def select_assets(data: _Data, names: list[str]) -> _Data:
    """Column subset in the given order."""
    index = {n: j for j, n in enumerate(data.names)}
    missing = [n for n in names if n not in index]
    if missing:
        raise DataError(f"unknown assets: {', '.join(missing)}")
    columns = [index[n] for n in names]
    values = data.values[:, columns]
    if isinstance(data, PriceMatrix):
        return PriceMatrix(tuple(names), data.dates, values)
    return RelativeMatrix(tuple(names), values, data.dates)


def filter_by_listing(prices: PricePanel | PriceMatrix, cutoff: str) -> PriceMatrix:
    """Keep only assets with data on every day up to and including ``cutoff``.

    Dates compare as ISO-8601 labels. A retained asset with a gap after the
    cutoff can't form a complete matrix and is reported as a DataError.
    """
    if isinstance(prices, PriceMatrix):
        prices = PricePanel.from_prices(prices)

    missing = prices.missing
    upto = np.array([d <= cutoff for d in prices.dates], dtype=bool)
    listed = ~missing[upto].any(axis=0)
    if not listed.any():
        raise EmptyUniverseError(f"no asset is listed on or before {cutoff}")

    dropped = [n for n, keep in zip(prices.names, listed) if not keep]
    if dropped:
        log.info(f"Excluded {len(dropped)} assets not listed by {cutoff}")

    kept = np.flatnonzero(listed)
    gaps = np.argwhere(missing[:, kept])
    if len(gaps):
        row, col = gaps[0]
        raise DataError(
            "missing value after listing cutoff",
            row=int(row) + 1,
            column=prices.names[kept[col]],
        )
    return PriceMatrix(
        tuple(prices.names[j] for j in kept), prices.dates, prices.values[:, kept]
    )
