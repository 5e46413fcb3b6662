"""Shared test fixtures."""

from __future__ import annotations

import logging
from pathlib import Path

import numpy as np
import pytest

from revertbench.market import MarketScenario, RelativeMatrix, synth_market, to_relatives
from revertbench.numerics import check_portfolio


def write_csv(path: Path, text: str) -> Path:
    """Write a literal CSV body (dedented lines) and return its path."""
    lines = [line.strip() for line in text.strip().splitlines()]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def alternating_relatives(days: int, up: float = 2.0, down: float = 0.5) -> RelativeMatrix:
    """Two assets: (up, 1) on odd days, (down, 1) on even days."""
    rows = [(up if t % 2 == 0 else down, 1.0) for t in range(days)]
    return RelativeMatrix(("A", "B"), np.array(rows))


def random_relatives(seed: int, n: int = 200, m: int = 5) -> RelativeMatrix:
    """Relatives of a geometric random walk market."""
    scenario = MarketScenario("geometric-random-walk", n=n + 1, m=m, volatility=0.03)
    return to_relatives(synth_market(scenario, seed))


def random_simplex(rng: np.random.Generator, m: int) -> np.ndarray:
    """Uniform draw from the probability simplex."""
    return rng.dirichlet(np.ones(m))


def assert_portfolio(b: np.ndarray) -> None:
    assert check_portfolio(b), f"not on the simplex: {b}"


@pytest.fixture(autouse=True)
def reset_package_logger():
    """Undo setup_logging() so caplog sees package records in every test."""
    yield
    logger = logging.getLogger("revertbench")
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()
    logger.propagate = True


@pytest.fixture
def prices_csv(tmp_path):
    """A small, valid three-asset price file."""
    return write_csv(
        tmp_path / "small.csv",
        """
        date,AAA,bbb,CCC
        2001-01-02,10,20,5
        2001-01-03,11,20,4
        2001-01-04,12.1,10,5
        2001-01-05,11,15,6
        """,
    )


@pytest.fixture
def rng():
    return np.random.default_rng(20240501)
