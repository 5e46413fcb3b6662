"""Dataclasses for price data: prices, price relatives, and dataset summaries."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from revertbench.errors import DataError


def _frozen_array(values: npt.ArrayLike) -> np.ndarray:
    """Copy into a read-only float64 array."""
    array = np.array(values, dtype=np.float64)
    array.setflags(write=False)
    return array


def _check_shape(names: tuple[str, ...], dates: tuple[str, ...], values: np.ndarray):
    if values.ndim != 2:
        raise DataError(f"expected a 2-d matrix, got {values.ndim} dimensions")
    if values.shape[0] != len(dates):
        raise DataError(
            f"row count {values.shape[0]} does not match date count {len(dates)}"
        )
    if values.shape[1] != len(names):
        raise DataError(
            f"column count {values.shape[1]} does not match name count {len(names)}"
        )
    if len(names) < 1:
        raise DataError("at least one asset is required")


def _check_dates(dates: tuple[str, ...]) -> None:
    for i in range(1, len(dates)):
        if not dates[i] > dates[i - 1]:
            raise DataError("dates not strictly increasing", row=i + 1)


def _check_positive(names: tuple[str, ...], values: np.ndarray, what: str) -> None:
    bad = np.argwhere(~(np.isfinite(values) & (values > 0)))
    if len(bad):
        row, col = bad[0]
        raise DataError(f"non-positive {what}", row=int(row) + 1, column=names[col])


@dataclass(frozen=True)
class PriceMatrix:
    """Closing prices, one row per trading day and one column per asset.

    Dates are opaque ISO-8601 labels; only their order matters.
    """

    names: tuple[str, ...]
    dates: tuple[str, ...]
    values: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "names", tuple(str(n) for n in self.names))
        object.__setattr__(self, "dates", tuple(str(d) for d in self.dates))
        object.__setattr__(self, "values", _frozen_array(self.values))
        _check_shape(self.names, self.dates, self.values)
        if self.values.shape[0] < 2:
            raise DataError("at least 2 price rows are required")
        _check_dates(self.dates)
        _check_positive(self.names, self.values, "price")

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def m(self) -> int:
        return self.values.shape[1]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PriceMatrix):
            return NotImplemented
        return (
            self.names == other.names
            and self.dates == other.dates
            and np.array_equal(self.values, other.values)
        )


@dataclass(frozen=True)
class RelativeMatrix:
    """Price relatives x_t(j) = p_t(j) / p_{t-1}(j).

    Each row is labelled with the date of the later price.
    """

    names: tuple[str, ...]
    values: np.ndarray
    dates: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "names", tuple(str(n) for n in self.names))
        object.__setattr__(self, "values", _frozen_array(self.values))
        dates = tuple(str(d) for d in self.dates)
        if not dates and self.values.ndim == 2:
            dates = tuple(f"{i:06d}" for i in range(1, self.values.shape[0] + 1))
        object.__setattr__(self, "dates", dates)
        _check_shape(self.names, self.dates, self.values)
        if self.values.shape[0] < 1:
            raise DataError("at least 1 relatives row is required")
        _check_dates(self.dates)
        _check_positive(self.names, self.values, "price relative")

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def m(self) -> int:
        return self.values.shape[1]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RelativeMatrix):
            return NotImplemented
        return (
            self.names == other.names
            and self.dates == other.dates
            and np.array_equal(self.values, other.values)
        )


@dataclass(frozen=True)
class PricePanel:
    """Prices that may have gaps (NaN), as read from a file with sentinels."""

    names: tuple[str, ...]
    dates: tuple[str, ...]
    values: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "names", tuple(str(n) for n in self.names))
        object.__setattr__(self, "dates", tuple(str(d) for d in self.dates))
        object.__setattr__(self, "values", _frozen_array(self.values))
        _check_shape(self.names, self.dates, self.values)
        _check_dates(self.dates)
        present = ~np.isnan(self.values)
        bad = np.argwhere(present & ~(np.isfinite(self.values) & (self.values > 0)))
        if len(bad):
            row, col = bad[0]
            raise DataError(
                "non-positive price", row=int(row) + 1, column=self.names[col]
            )

    @property
    def missing(self) -> np.ndarray:
        """Boolean mask of missing entries."""
        return np.isnan(self.values)

    @classmethod
    def from_prices(cls, prices: PriceMatrix) -> PricePanel:
        return cls(prices.names, prices.dates, prices.values)


@dataclass(frozen=True)
class DatasetSummary:
    """One row of a dataset description table."""

    name: str
    period: tuple[str, str]
    days: int
    assets: int
    max_relative: float
    min_relative: float

    def __post_init__(self) -> None:
        if self.days < 1 or self.assets < 1:
            raise DataError(f"dataset {self.name} is empty")
        if self.min_relative > self.max_relative:
            raise DataError(f"dataset {self.name}: min relative exceeds max")

    @property
    def period_label(self) -> str:
        return f"{self.period[0]} - {self.period[1]}"

    def as_row(self) -> list[str]:
        """Cells in Name, Period, Days, Assets, Max, Min order."""
        return [
            self.name,
            self.period_label,
            str(self.days),
            str(self.assets),
            f"{self.max_relative:.4f}",
            f"{self.min_relative:.4f}",
        ]


SUMMARY_COLUMNS = ("Name", "Period", "Days", "Assets", "Max", "Min")
