"""Synthetic market generator for tests and demos."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import pandas as pd

from revertbench.enums import MarketProcess
from revertbench.errors import ValidationError
from revertbench.market.models import PriceMatrix

SYNTH_START_DATE = "2000-01-01"


@dataclass(frozen=True)
class MarketScenario:
    """Parameters of a synthetic price process.

    deterministic-alternating: asset 0 is multiplied by ``up`` on odd days and
    ``down`` on even days; every other asset stays at ``start_price``.
    geometric-random-walk: daily log returns ~ Normal(drift, volatility).
    mean-reverting: log price pulled toward log(start_price) by ``reversion``
    each day, plus Normal(0, volatility) noise.
    """

    process: MarketProcess = MarketProcess.RANDOM_WALK
    n: int = 250
    m: int = 5
    start_price: float = 100.0
    up: float = 2.0
    down: float = 0.5
    drift: float = 0.0
    volatility: float = 0.02
    reversion: float = 0.1

    def __post_init__(self) -> None:
        object.__setattr__(self, "process", MarketProcess(self.process))
        if self.n < 2:
            raise ValidationError(f"synthetic market needs n >= 2 days, got {self.n}")
        if self.m < 1:
            raise ValidationError(f"synthetic market needs m >= 1 assets, got {self.m}")
        if not self.start_price > 0:
            raise ValidationError("start_price must be positive")
        if not (self.up > 0 and self.down > 0):
            raise ValidationError("alternating ratios must be positive")
        if not self.volatility >= 0:
            raise ValidationError("volatility must be non-negative")
        if not 0 <= self.reversion <= 1:
            raise ValidationError("reversion must lie in [0, 1]")


def _dates(n: int) -> list[str]:
    return list(
        pd.date_range(SYNTH_START_DATE, periods=n, freq="D").strftime("%Y-%m-%d")
    )


def _log_prices(spec: MarketScenario, rng: np.random.Generator) -> np.ndarray:
    anchor = np.log(spec.start_price)
    if spec.process is MarketProcess.RANDOM_WALK:
        steps = rng.normal(spec.drift, spec.volatility, size=(spec.n - 1, spec.m))
        return anchor + np.vstack([np.zeros((1, spec.m)), np.cumsum(steps, axis=0)])

    # mean-reverting
    noise = rng.normal(0.0, spec.volatility, size=(spec.n - 1, spec.m))
    logs = np.empty((spec.n, spec.m))
    logs[0] = anchor
    for t in range(1, spec.n):
        logs[t] = logs[t - 1] + spec.reversion * (anchor - logs[t - 1]) + noise[t - 1]
    return logs


def synth_market(spec: MarketScenario, seed: int = 0) -> PriceMatrix:
    """Generate prices; identical (spec, seed) always gives identical output."""
    names = [f"S{j:03d}" for j in range(spec.m)]
    if spec.process is MarketProcess.ALTERNATING:
        values = np.full((spec.n, spec.m), spec.start_price)
        for t in range(1, spec.n):
            ratio = spec.up if t % 2 == 1 else spec.down
            values[t, 0] = values[t - 1, 0] * ratio
    else:
        rng = np.random.default_rng(seed)
        values = np.exp(_log_prices(spec, rng))
    return PriceMatrix(names, _dates(spec.n), values)
