"""Dataclasses for strategy parameters and per-run strategy state."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field, replace

import numpy as np

from revertbench.enums import StrategyKind
from revertbench.errors import ValidationError
from revertbench.numerics import Portfolio

DEFAULT_EPSILON = {StrategyKind.PAMR: 0.5, StrategyKind.OLMAR: 10.0}
DEFAULT_WINDOW = 5
DEFAULT_ETA = 10.0
TCO2_WINDOW = 5
# lambda = LAMBDA_SCALE * eta * gamma
LAMBDA_SCALE = 10.0

_ALIASES = {
    "BAH": StrategyKind.BAH_U,
    "BAHU": StrategyKind.BAH_U,
    "CRP": StrategyKind.CRP_U,
    "CRPU": StrategyKind.CRP_U,
    "SMR": StrategyKind.SMR,
    "SMAR": StrategyKind.SMAR,
    "PAMR": StrategyKind.PAMR,
    "OLMAR": StrategyKind.OLMAR,
    "TCO1": StrategyKind.TCO1,
    "TCO2": StrategyKind.TCO2,
}


def parse_strategy(name: str | StrategyKind) -> StrategyKind:
    """Resolve a user-facing strategy name (bah, CRP_U, tco-1, ...)."""
    if isinstance(name, StrategyKind):
        return name
    key = name.strip().upper().replace("-", "").replace("_", "")
    try:
        return _ALIASES[key]
    except KeyError:
        choices = ", ".join(k.label for k in StrategyKind)
        raise ValidationError(
            f"unknown strategy '{name}' (choose from {choices})"
        ) from None


@dataclass(frozen=True)
class StrategySpec:
    """A strategy and its parameters.

    ``epsilon`` and ``window`` default per strategy when left as None.
    ``lambda_`` is derived as 10 * eta * gamma_hint unless given explicitly.
    """

    kind: StrategyKind
    epsilon: float | None = None
    window: int | None = None
    eta: float = DEFAULT_ETA
    lambda_: float | None = None
    gamma_hint: float = 0.0
    literal_eq10: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", parse_strategy(self.kind))
        if self.epsilon is None:
            object.__setattr__(self, "epsilon", DEFAULT_EPSILON.get(self.kind))
        if self.window is None:
            object.__setattr__(self, "window", DEFAULT_WINDOW)

        if self.epsilon is not None and not self.epsilon > 0:
            raise ValidationError(f"epsilon must be positive, got {self.epsilon}")
        if self.window < 1:
            raise ValidationError(f"window must be at least 1, got {self.window}")
        if not self.eta > 0:
            raise ValidationError(f"eta must be positive, got {self.eta}")
        if self.lambda_ is not None and not self.lambda_ >= 0:
            raise ValidationError(f"lambda must be non-negative, got {self.lambda_}")
        if not 0 <= self.gamma_hint <= 1:
            raise ValidationError(f"gamma must lie in [0, 1], got {self.gamma_hint}")

    @property
    def label(self) -> str:
        return self.kind.label

    @property
    def threshold(self) -> float:
        """TCO's lambda: explicit value, else 10 * eta * gamma."""
        if self.lambda_ is not None:
            return self.lambda_
        return LAMBDA_SCALE * self.eta * self.gamma_hint

    @property
    def sma_window(self) -> int:
        """Moving-average window the strategy reads from its price history."""
        if self.kind is StrategyKind.TCO2:
            return TCO2_WINDOW
        if self.kind in (StrategyKind.SMAR, StrategyKind.OLMAR):
            return self.window
        return 1

    @property
    def window_capacity(self) -> int:
        return max(self.sma_window, 1) + 1

    def for_gamma(self, gamma: float) -> StrategySpec:
        """Copy with the cost rate used to derive lambda."""
        return replace(self, gamma_hint=gamma)


@dataclass
class StrategyState:
    """Everything a strategy remembers between days.

    ``current_portfolio`` is the target b_t; ``adjusted_portfolio`` is b_t
    after the day's price drift. ``price_window`` holds the most recent
    cumulative price rows, oldest first.
    """

    current_portfolio: Portfolio
    adjusted_portfolio: Portfolio
    price_window: deque[np.ndarray] = field(default_factory=deque)
    day_index: int = 0
    last_relative: np.ndarray | None = None

    @property
    def prices(self) -> np.ndarray:
        """Price window as a (rows x m) array."""
        return np.vstack(list(self.price_window))
