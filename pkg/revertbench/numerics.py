"""Shared vector math for portfolio selection.

Portfolios and predicted price relatives are plain float64 numpy vectors; the
helpers here enforce and check their invariants.
"""

from __future__ import annotations

import numpy as np
import numpy.typing as npt

from revertbench.errors import ValidationError

# A point on the probability simplex: nonnegative wealth fractions summing to 1
Portfolio = np.ndarray
# Strictly positive vector of expected next-day price relatives
PredictedRelative = np.ndarray

SUM_TOLERANCE = 1e-9
NONNEG_TOLERANCE = 1e-12


def uniform_portfolio(m: int) -> Portfolio:
    """Equal weights 1/m."""
    if m < 1:
        raise ValidationError(f"portfolio needs at least one asset, got m={m}")
    return np.full(m, 1.0 / m)


def check_portfolio(b: npt.ArrayLike) -> bool:
    """True if b lies on the simplex within tolerance."""
    b = np.asarray(b, dtype=np.float64)
    return (
        b.ndim == 1
        and b.size > 0
        and bool(np.all(np.isfinite(b)))
        and bool(np.all(b >= -NONNEG_TOLERANCE))
        and abs(float(b.sum()) - 1.0) <= SUM_TOLERANCE
    )


def project_simplex(v: npt.ArrayLike) -> Portfolio:
    """Euclidean projection onto {b : b >= 0, sum(b) = 1}.

    Sort-and-threshold: sort descending, find the largest k with
    u_k - (sum_{i<=k} u_i - 1) / k > 0, subtract that threshold, clip at 0.
    The threshold depends only on the sorted values, so ties and input order
    don't change the result.
    """
    v = np.asarray(v, dtype=np.float64)
    if v.ndim != 1 or v.size == 0:
        raise ValidationError("projection needs a non-empty vector")
    if not np.all(np.isfinite(v)):
        raise ValidationError("cannot project a non-finite vector onto the simplex")
    u = np.sort(v)[::-1]
    cssv = np.cumsum(u) - 1.0
    ind = np.arange(1, v.size + 1)
    rho = np.count_nonzero(u - cssv / ind > 0)
    theta = cssv[rho - 1] / rho
    return np.maximum(v - theta, 0.0)


def sma(prices: npt.ArrayLike, w: int) -> np.ndarray:
    """Simple moving average of the last w price rows.

    With fewer than w rows available the mean of all rows is used.
    """
    prices = np.asarray(prices, dtype=np.float64)
    if w < 1:
        raise ValidationError(f"window size must be at least 1, got {w}")
    if prices.ndim != 2 or prices.shape[0] == 0:
        raise ValidationError("moving average needs at least one price row")
    return prices[-min(w, prices.shape[0]) :].mean(axis=0)


def predicted_relative_sma(prices: npt.ArrayLike, w: int) -> PredictedRelative:
    """Predicted next relative SMA_t(w) / p_t, elementwise."""
    prices = np.asarray(prices, dtype=np.float64)
    return sma(prices, w) / prices[-1]


def predicted_relative_inverse(x_t: npt.ArrayLike) -> PredictedRelative:
    """Predicted next relative 1 / x_t, elementwise."""
    x_t = np.asarray(x_t, dtype=np.float64)
    if not np.all(x_t > 0):
        raise ValidationError("price relatives must be strictly positive")
    return 1.0 / x_t


def l1_distance(a: npt.ArrayLike, b: npt.ArrayLike) -> float:
    """Sum of absolute coordinate differences."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValidationError(f"length mismatch: {a.shape} vs {b.shape}")
    return float(np.abs(a - b).sum())
