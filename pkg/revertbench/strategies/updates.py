"""Pure portfolio update rules.

Each rule maps explicit inputs (current portfolio, observed or predicted
relatives, parameters) to the next portfolio, so the rules can be checked
against the brute-force oracle without running a backtest.
"""

from __future__ import annotations

from typing import Literal

import numpy as np

from revertbench.numerics import Portfolio, PredictedRelative, project_simplex

# Values within this distance of the extreme count as tied
TIE_TOLERANCE = 1e-12
# Squared deviation below this carries no reversion signal: no trade
DEGENERATE_VARIANCE = 1e-15


def extreme_set_portfolio(
    values: np.ndarray, mode: Literal["min", "max"]
) -> Portfolio:
    """Spread wealth evenly over the assets attaining the min (or max)."""
    if mode == "min":
        chosen = values <= values.min() + TIE_TOLERANCE
    else:
        chosen = values >= values.max() - TIE_TOLERANCE
    return chosen.astype(np.float64) / np.count_nonzero(chosen)


def pamr_update(b: Portfolio, x: np.ndarray, epsilon: float) -> Portfolio:
    """Passive-aggressive step toward b.x <= epsilon.

    Passive (returns b itself) when the constraint already holds or the
    relatives have no cross-sectional spread.
    """
    gross = float(b @ x)
    if gross <= epsilon:
        return b
    deviation = x - x.mean()
    denom = float(deviation @ deviation)
    if denom < DEGENERATE_VARIANCE:
        return b
    tau = (gross - epsilon) / denom
    return project_simplex(b - tau * deviation)


def olmar_update(b: Portfolio, x_pred: PredictedRelative, epsilon: float) -> Portfolio:
    """Passive-aggressive step toward b.x_pred >= epsilon."""
    expected = float(b @ x_pred)
    if expected >= epsilon:
        return b
    deviation = x_pred - x_pred.mean()
    denom = float(deviation @ deviation)
    if denom < DEGENERATE_VARIANCE:
        return b
    tau = (epsilon - expected) / denom
    return project_simplex(b + tau * deviation)


def tco_target(
    b_hat: Portfolio, x_pred: PredictedRelative, eta: float, lam: float
) -> np.ndarray:
    """Thresholded TCO move from the drifted portfolio, before normalization.

    Only coordinates whose proposed change exceeds lam in magnitude move, and
    they move by the excess.
    """
    u = x_pred / float(b_hat @ x_pred)
    if np.all(u == u[0]):
        return b_hat
    proposal = eta * (u - u.mean())
    shift = np.sign(proposal) * np.maximum(np.abs(proposal) - lam, 0.0)
    if not np.any(shift):
        return b_hat
    return b_hat + shift


def tco_update(
    b_hat: Portfolio, x_pred: PredictedRelative, eta: float, lam: float
) -> Portfolio:
    """TCO step; returns b_hat unchanged when every change is suppressed."""
    target = tco_target(b_hat, x_pred, eta, lam)
    if target is b_hat:
        return b_hat
    return project_simplex(target)
