"""CSV ingestion and export for price and price-relative files.

Layout: header row ``date,TICKER1,TICKER2,...`` then one row per trading day
with decimal-point numbers, UTF-8. An empty cell or the token ``NA`` marks
missing data; any other non-numeric token is a parse error.
"""

from __future__ import annotations

import csv
import logging
from pathlib import Path

import numpy as np
import pandas as pd

from revertbench.config import atomic_write
from revertbench.enums import InputKind
from revertbench.errors import DataError
from revertbench.market.models import PriceMatrix, PricePanel, RelativeMatrix

log = logging.getLogger(__name__)

MISSING_TOKENS = frozenset({"", "NA"})


def _read_rows(path: Path) -> list[list[str]]:
    """Raw CSV rows, blank lines dropped."""
    if not path.exists():
        raise DataError(f"file not found: {path}")
    try:
        with open(path, encoding="utf-8-sig", newline="") as f:
            return [row for row in csv.reader(f) if row]
    except UnicodeDecodeError as e:
        raise DataError(f"{path} is not UTF-8: {e}") from None
    except csv.Error as e:
        raise DataError(f"malformed CSV in {path}: {e}") from None


def _read_cells(path: Path) -> tuple[list[str], list[str], np.ndarray]:
    """Parse a CSV into (names, dates, values) with NaN for missing cells.

    Raises DataError with row/column coordinates for structural problems and
    unparseable numbers. Row numbers are 1-based and exclude the header.
    """
    rows = _read_rows(path)
    if not rows:
        raise DataError(f"{path} is empty")

    header = [c.strip() for c in rows[0]]
    if header[0].lower() != "date":
        raise DataError(f"{path}: first header column must be 'date'")
    names = header[1:]
    if not names:
        raise DataError(f"{path}: no asset columns")
    seen: set[str] = set()
    for name in names:
        if name in seen:
            raise DataError(f"{path}: duplicate asset column '{name}'")
        seen.add(name)

    values = np.full((len(rows) - 1, len(names)), np.nan)
    dates: list[str] = []
    for i, row in enumerate(rows[1:], start=1):
        if len(row) != len(header):
            raise DataError(
                f"ragged row: expected {len(header)} fields, got {len(row)}", row=i
            )
        date = row[0].strip()
        if not date:
            raise DataError("missing date", row=i)
        dates.append(date)
        for j, cell in enumerate(row[1:]):
            token = cell.strip()
            if token in MISSING_TOKENS:
                continue
            try:
                number = float(token)
            except ValueError:
                raise DataError(
                    f"unparseable number '{token}'", row=i, column=names[j]
                ) from None
            if not np.isfinite(number):
                raise DataError(
                    f"unparseable number '{token}'", row=i, column=names[j]
                )
            values[i - 1, j] = number

    return names, dates, values


def _reject_missing(names: list[str], values: np.ndarray) -> None:
    gaps = np.argwhere(np.isnan(values))
    if len(gaps):
        row, col = gaps[0]
        raise DataError("missing value", row=int(row) + 1, column=names[col])


def load_prices(
    path: Path | str, kind: InputKind | str = InputKind.PRICES
) -> PriceMatrix | RelativeMatrix:
    """Load a complete price (or relatives) file.

    Args:
        path: CSV file location.
        kind: ``prices`` returns a PriceMatrix; ``relatives`` returns a
            RelativeMatrix whose values are taken as x_t(j) directly.

    Raises:
        DataError: missing file, ragged rows, unparseable numbers, missing
            values, non-positive entries, or dates out of order.
    """
    path = Path(path)
    kind = InputKind(kind)
    names, dates, values = _read_cells(path)
    _reject_missing(names, values)
    if kind is InputKind.RELATIVES:
        data: PriceMatrix | RelativeMatrix = RelativeMatrix(names, values, dates)
    else:
        data = PriceMatrix(names, dates, values)
    log.info(f"Loaded {kind} from {path}: {data.n} rows x {data.m} assets")
    return data


def load_panel(path: Path | str) -> PricePanel:
    """Load a price file that may contain missing-data sentinels."""
    path = Path(path)
    names, dates, values = _read_cells(path)
    panel = PricePanel(names, dates, values)
    log.info(
        f"Loaded panel from {path}: {len(dates)} rows x {len(names)} assets, "
        f"{int(panel.missing.sum())} missing cells"
    )
    return panel


def _frame(names, dates, values) -> pd.DataFrame:
    return pd.DataFrame(
        np.asarray(values), index=pd.Index(list(dates), name="date"), columns=list(names)
    )


def write_frame(frame: pd.DataFrame, path: Path | str, index: bool = True) -> None:
    """Write a frame as UTF-8 CSV with full float precision, atomically."""
    atomic_write(Path(path), frame.to_csv(index=index, lineterminator="\n"))


def write_prices(prices: PriceMatrix | PricePanel, path: Path | str) -> None:
    """Write prices in the load layout; missing entries become empty cells."""
    write_frame(_frame(prices.names, prices.dates, prices.values), path)


def write_relatives(relatives: RelativeMatrix, path: Path | str) -> None:
    """Write price relatives in the load layout."""
    write_frame(_frame(relatives.names, relatives.dates, relatives.values), path)
