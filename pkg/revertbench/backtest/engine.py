"""Day-by-day backtest loop with proportional transaction costs."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from revertbench.errors import ValidationError
from revertbench.market.models import PriceMatrix, RelativeMatrix
from revertbench.market.transform import to_relatives
from revertbench.numerics import Portfolio, l1_distance
from revertbench.strategies import StrategySpec, new_state, next_portfolio, observe

log = logging.getLogger(__name__)

# Turnover of the day-1 purchase: all cash into the uniform portfolio
INITIAL_TURNOVER = 1.0


@dataclass(frozen=True)
class CostModel:
    """Proportional commission: rate gamma per unit of wealth traded."""

    gamma: float = 0.0

    def __post_init__(self) -> None:
        if not 0 <= self.gamma <= 1:
            raise ValidationError(f"gamma must lie in [0, 1], got {self.gamma}")


@dataclass(frozen=True)
class DayRecord:
    day: int
    target: Portfolio
    gross_return: float
    turnover: float
    net_return: float
    wealth: float


@dataclass(frozen=True)
class BacktestResult:
    """One strategy over one dataset at one cost rate.

    ``ruined`` is set once a non-positive net return clamped wealth to 0.
    ``elapsed`` is wall time of the run in seconds.
    """

    strategy: StrategySpec
    dataset: str
    gamma: float
    records: tuple[DayRecord, ...]
    final_wealth: float
    ruined: bool = False
    elapsed: float = 0.0

    @property
    def wealth_series(self) -> np.ndarray:
        return np.array([r.wealth for r in self.records])


def day_factor(
    b_t: Portfolio,
    x_t: npt.ArrayLike,
    prev_holdings: Portfolio | None,
    gamma: float,
) -> tuple[float, float]:
    """Net return and turnover for one trading day.

    ``prev_holdings`` is the drifted portfolio carried from the prior close,
    or None when starting from cash.
    """
    x_t = np.asarray(x_t, dtype=np.float64)
    gross = float(b_t @ x_t)
    if prev_holdings is None:
        turnover = INITIAL_TURNOVER
    else:
        turnover = l1_distance(b_t, prev_holdings)
    return gross * (1.0 - gamma * turnover), turnover


def run(
    data: RelativeMatrix,
    spec: StrategySpec,
    cost: CostModel | None = None,
    dataset: str = "",
) -> BacktestResult:
    """Drive ``spec`` over every relatives row of ``data``.

    The target for day t is computed from rows 1..t-1 only. TCO's lambda is
    derived from ``cost.gamma`` unless ``spec.lambda_`` is set.
    """
    cost = cost or CostModel()
    spec = spec.for_gamma(cost.gamma)
    if data.n < 1:
        raise ValidationError("dataset has no trading days")

    log.debug(f"Run {spec.label} on {dataset or '<unnamed>'} (gamma={cost.gamma})")
    start = time.perf_counter()

    state = new_state(spec, data.m)
    b_t = state.current_portfolio
    holdings: Portfolio | None = None
    wealth = 1.0
    ruined = False
    records: list[DayRecord] = []

    for day, x_t in enumerate(data.values, start=1):
        gross = float(b_t @ x_t)
        net, turnover = day_factor(b_t, x_t, holdings, cost.gamma)
        if ruined or net <= 0:
            if not ruined:
                log.warning(f"{spec.label} on {dataset}: wealth ruined on day {day}")
            ruined = True
            wealth = 0.0
        else:
            wealth *= net
        records.append(DayRecord(day, b_t, gross, turnover, net, wealth))

        observe(state, x_t)
        holdings = state.adjusted_portfolio
        b_t = next_portfolio(spec, state)
        state.current_portfolio = b_t

    elapsed = time.perf_counter() - start
    log.debug(
        f"Finished {spec.label} on {dataset or '<unnamed>'}: "
        f"wealth={wealth:.6g} in {elapsed:.3f}s"
    )
    return BacktestResult(
        strategy=spec,
        dataset=dataset,
        gamma=cost.gamma,
        records=tuple(records),
        final_wealth=wealth,
        ruined=ruined,
        elapsed=elapsed,
    )


def _single_column(data: PriceMatrix | RelativeMatrix) -> np.ndarray:
    if data.m != 1:
        raise ValidationError(f"probe needs exactly one asset, got {data.m}")
    return data.values[:, 0]


def down_day_probe(relatives: RelativeMatrix) -> float:
    """Hold the asset only on days after its price fell, cash otherwise.

    Day 1 holds cash. No costs are charged.
    """
    x = _single_column(relatives)
    wealth = 1.0
    for prev, today in zip(x[:-1], x[1:]):
        if prev < 1.0:
            wealth *= float(today)
    return wealth


def single_asset_down_day_probe(prices: PriceMatrix) -> float:
    _single_column(prices)
    return down_day_probe(to_relatives(prices))


def single_asset_bah(relatives: RelativeMatrix) -> float:
    """Buy-and-hold wealth of a one-asset dataset, free of costs."""
    wealth = 1.0
    for x in _single_column(relatives):
        wealth *= float(x)
    return wealth
