"""Strategy state machine: observe a day's relatives, emit tomorrow's target.

A run creates a state with ``new_state``, then for each revealed relatives
row calls ``observe`` followed by ``next_portfolio``. Steps only ever see
data up to and including the row just observed.
"""

from __future__ import annotations

from collections import deque

import numpy as np
import numpy.typing as npt

from revertbench.enums import StrategyKind
from revertbench.errors import ValidationError
from revertbench.numerics import (
    Portfolio,
    predicted_relative_inverse,
    predicted_relative_sma,
    sma,
    uniform_portfolio,
)
from revertbench.strategies.models import TCO2_WINDOW, StrategySpec, StrategyState
from revertbench.strategies.updates import (
    extreme_set_portfolio,
    olmar_update,
    pamr_update,
    tco_update,
)


def initial_portfolio(m: int) -> Portfolio:
    """Uniform start shared by every strategy."""
    return uniform_portfolio(m)


def price_adjusted(b_t: Portfolio, x_t: npt.ArrayLike) -> Portfolio:
    """Holdings after one day of price drift: (b ⊙ x) / (b · x)."""
    x_t = np.asarray(x_t, dtype=np.float64)
    gross = float(b_t @ x_t)
    if not gross > 0:
        raise ValidationError("portfolio return is not positive; cannot drift")
    return b_t * x_t / gross


def new_state(spec: StrategySpec, m: int) -> StrategyState:
    """Fresh state: uniform portfolio, price history seeded with a unit row."""
    b = initial_portfolio(m)
    window: deque[np.ndarray] = deque([np.ones(m)], maxlen=spec.window_capacity)
    return StrategyState(current_portfolio=b, adjusted_portfolio=b, price_window=window)


def observe(state: StrategyState, x_t: npt.ArrayLike) -> None:
    """Advance the state past one revealed relatives row."""
    x_t = np.asarray(x_t, dtype=np.float64)
    state.adjusted_portfolio = price_adjusted(state.current_portfolio, x_t)
    state.price_window.append(state.price_window[-1] * x_t)
    state.day_index += 1
    state.last_relative = x_t


def step_bah(state: StrategyState) -> Portfolio:
    # Keep whatever the market drifted us into
    return state.adjusted_portfolio


def step_crp(state: StrategyState) -> Portfolio:
    return uniform_portfolio(state.current_portfolio.size)


def step_smr(state: StrategyState, x_t: np.ndarray) -> Portfolio:
    """All wealth on yesterday's worst performers."""
    return extreme_set_portfolio(x_t, "min")


def step_smar(state: StrategyState, spec: StrategySpec) -> Portfolio:
    """All wealth on the highest SMA-predicted relatives."""
    x_pred = predicted_relative_sma(state.prices, spec.window)
    return extreme_set_portfolio(x_pred, "max")


def step_pamr(state: StrategyState, x_t: np.ndarray, spec: StrategySpec) -> Portfolio:
    return pamr_update(state.current_portfolio, x_t, spec.epsilon)


def step_olmar(state: StrategyState, spec: StrategySpec) -> Portfolio:
    x_pred = predicted_relative_sma(state.prices, spec.window)
    return olmar_update(state.current_portfolio, x_pred, spec.epsilon)


def step_tco(
    state: StrategyState, x_t: np.ndarray, spec: StrategySpec, variant: int
) -> Portfolio:
    """TCO-1 (inverse relatives) or TCO-2 (moving average) step.

    TCO-2 divides the moving average by today's price; with
    ``spec.literal_eq10`` it divides by today's relatives instead.
    """
    if variant == 1:
        x_pred = predicted_relative_inverse(x_t)
    elif variant == 2:
        if spec.literal_eq10:
            x_pred = sma(state.prices, TCO2_WINDOW) / x_t
        else:
            x_pred = predicted_relative_sma(state.prices, TCO2_WINDOW)
    else:
        raise ValidationError(f"TCO variant must be 1 or 2, got {variant}")
    return tco_update(state.adjusted_portfolio, x_pred, spec.eta, spec.threshold)


def next_portfolio(spec: StrategySpec, state: StrategyState) -> Portfolio:
    """Tomorrow's target for the strategy named by ``spec.kind``."""
    x_t = state.last_relative
    if x_t is None:
        return initial_portfolio(state.current_portfolio.size)

    match spec.kind:
        case StrategyKind.BAH_U:
            return step_bah(state)
        case StrategyKind.CRP_U:
            return step_crp(state)
        case StrategyKind.SMR:
            return step_smr(state, x_t)
        case StrategyKind.SMAR:
            return step_smar(state, spec)
        case StrategyKind.PAMR:
            return step_pamr(state, x_t, spec)
        case StrategyKind.OLMAR:
            return step_olmar(state, spec)
        case StrategyKind.TCO1:
            return step_tco(state, x_t, spec, variant=1)
        case StrategyKind.TCO2:
            return step_tco(state, x_t, spec, variant=2)
    raise ValidationError(f"unsupported strategy {spec.kind}")
