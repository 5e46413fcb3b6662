"""Online portfolio selection strategies.

BAH_U, CRP_U, SMR, SMAR, PAMR, OLMAR, TCO-1 and TCO-2, each a step of one
state machine driven by the backtest engine.
"""

from revertbench.strategies.models import (
    DEFAULT_EPSILON,
    DEFAULT_ETA,
    DEFAULT_WINDOW,
    StrategySpec,
    StrategyState,
    parse_strategy,
)
from revertbench.strategies.steps import (
    initial_portfolio,
    new_state,
    next_portfolio,
    observe,
    price_adjusted,
    step_bah,
    step_crp,
    step_olmar,
    step_pamr,
    step_smar,
    step_smr,
    step_tco,
)
from revertbench.strategies.updates import (
    extreme_set_portfolio,
    olmar_update,
    pamr_update,
    tco_target,
    tco_update,
)

__all__ = [
    "DEFAULT_EPSILON",
    "DEFAULT_ETA",
    "DEFAULT_WINDOW",
    "StrategySpec",
    "StrategyState",
    "extreme_set_portfolio",
    "initial_portfolio",
    "new_state",
    "next_portfolio",
    "observe",
    "olmar_update",
    "pamr_update",
    "parse_strategy",
    "price_adjusted",
    "step_bah",
    "step_crp",
    "step_olmar",
    "step_pamr",
    "step_smar",
    "step_smr",
    "step_tco",
    "tco_target",
    "tco_update",
]
