"""Tests for revertbench.strategies: parameters, update rules and steps."""

from __future__ import annotations

import numpy as np
import pytest

from revertbench.enums import StrategyKind
from revertbench.errors import ValidationError
from revertbench.numerics import l1_distance, sma
from revertbench.strategies import (
    StrategySpec,
    extreme_set_portfolio,
    initial_portfolio,
    new_state,
    next_portfolio,
    observe,
    parse_strategy,
    price_adjusted,
    step_crp,
    step_tco,
    tco_target,
    tco_update,
)
from tests.conftest import assert_portfolio


def _after(kind: StrategyKind | str, rows, **params):
    """Observe each row in turn and return (state, spec, next target)."""
    spec = StrategySpec(kind, **params)
    state = new_state(spec, len(rows[0]))
    target = state.current_portfolio
    for x in rows:
        observe(state, np.asarray(x, dtype=float))
        target = next_portfolio(spec, state)
        state.current_portfolio = target
    return state, spec, target


class TestStrategySpec:
    """Tests for parameter defaults, validation and name parsing."""

    @pytest.mark.parametrize(
        "name, kind",
        [
            ("bah", StrategyKind.BAH_U),
            ("BAH_U", StrategyKind.BAH_U),
            ("crp", StrategyKind.CRP_U),
            ("tco-1", StrategyKind.TCO1),
            ("TCO2", StrategyKind.TCO2),
            (" olmar ", StrategyKind.OLMAR),
        ],
    )
    def test_parse_strategy(self, name, kind):
        assert parse_strategy(name) is kind

    def test_unknown_strategy(self):
        with pytest.raises(ValidationError, match="unknown strategy 'CWMR'"):
            parse_strategy("CWMR")

    def test_defaults(self):
        assert StrategySpec("PAMR").epsilon == 0.5
        olmar = StrategySpec("OLMAR")
        assert olmar.epsilon == 10.0 and olmar.window == 5
        assert StrategySpec("SMAR").window == 5
        assert StrategySpec("TCO1").eta == 10.0

    def test_labels(self):
        assert StrategySpec("tco1").label == "TCO-1"
        assert StrategySpec("crp").label == "CRP_U"

    def test_lambda_from_gamma(self):
        spec = StrategySpec("TCO1").for_gamma(0.0025)
        assert spec.threshold == pytest.approx(0.25)
        assert StrategySpec("TCO1").threshold == 0.0

    def test_explicit_lambda_wins(self):
        assert StrategySpec("TCO2", lambda_=0.1).for_gamma(0.01).threshold == 0.1

    def test_tco2_window_is_fixed(self):
        spec = StrategySpec("TCO2", window=20)
        assert spec.sma_window == 5
        assert spec.window_capacity == 6

    @pytest.mark.parametrize(
        "params",
        [{"epsilon": 0.0}, {"window": 0}, {"eta": -1.0}, {"lambda_": -0.1}, {"gamma_hint": 2.0}],
    )
    def test_invalid_parameters(self, params):
        with pytest.raises(ValidationError):
            StrategySpec("OLMAR", **params)


class TestBasics:
    """Tests for initial_portfolio and price_adjusted."""

    @pytest.mark.parametrize("m", [1, 3, 4])
    def test_initial_is_uniform(self, m):
        np.testing.assert_allclose(initial_portfolio(m), np.full(m, 1.0 / m), atol=1e-15)

    def test_initial_needs_assets(self):
        with pytest.raises(ValidationError):
            initial_portfolio(0)

    @pytest.mark.parametrize(
        "b, x, expected",
        [
            ((0.5, 0.5), (1.3, 1.3), (0.5, 0.5)),
            ((0.5, 0.5), (2.0, 1.0), (2 / 3, 1 / 3)),
            ((1.0, 0.0), (0.7, 3.0), (1.0, 0.0)),
        ],
    )
    def test_price_adjusted(self, b, x, expected):
        np.testing.assert_allclose(price_adjusted(np.array(b), x), expected)

    def test_price_adjusted_zero_return(self):
        with pytest.raises(ValidationError):
            price_adjusted(np.array([1.0, 0.0]), (0.0, 1.0))

    def test_first_target_is_uniform(self):
        spec = StrategySpec("SMR")
        state = new_state(spec, 3)
        np.testing.assert_allclose(next_portfolio(spec, state), np.full(3, 1 / 3))


class TestBahAndCrp:
    """Tests for the benchmark strategies."""

    def test_bah_drifts(self):
        _, _, b = _after("BAH_U", [(2.0, 1.0)])
        np.testing.assert_allclose(b, (2 / 3, 1 / 3))

    def test_bah_constant_market_stays_uniform(self):
        _, _, b = _after("BAH_U", [(1.0, 1.0, 1.0)] * 5)
        np.testing.assert_allclose(b, np.full(3, 1 / 3))

    def test_bah_target_is_the_drifted_holdings(self):
        state, _, b = _after("BAH_U", [(1.1, 0.9)])
        assert b is state.adjusted_portfolio

    @pytest.mark.parametrize("m", [1, 2, 5])
    def test_crp_is_uniform(self, m):
        state, _, b = _after("CRP_U", [np.linspace(0.5, 1.5, m)])
        np.testing.assert_allclose(b, np.full(m, 1.0 / m))
        np.testing.assert_allclose(step_crp(state), np.full(m, 1.0 / m))


class TestSimpleMeanReversion:
    """Tests for SMR and SMAR and their tie handling."""

    @pytest.mark.parametrize(
        "x, expected",
        [
            ((1.1, 0.9, 1.0), (0, 1, 0)),
            ((0.9, 0.9, 1.2), (0.5, 0.5, 0)),
            ((1.0, 1.0, 1.0), (1 / 3, 1 / 3, 1 / 3)),
        ],
    )
    def test_smr(self, x, expected):
        _, _, b = _after("SMR", [x])
        np.testing.assert_allclose(b, expected)

    @pytest.mark.parametrize(
        "values, expected",
        [
            ((0.8, 1.2), (0, 1)),
            ((1.0, 1.0), (0.5, 0.5)),
            ((1.5, 1.5, 0.9), (0.5, 0.5, 0)),
        ],
    )
    def test_max_set(self, values, expected):
        np.testing.assert_allclose(extreme_set_portfolio(np.array(values), "max"), expected)

    def test_ties_within_tolerance(self):
        b = extreme_set_portfolio(np.array([1.0, 1.0 + 1e-13, 2.0]), "min")
        np.testing.assert_array_equal(b, [0.5, 0.5, 0.0])

    def test_weights_are_exactly_one_over_k(self, rng):
        for _ in range(50):
            values = rng.integers(0, 3, size=6).astype(float)
            b = extreme_set_portfolio(values, "max")
            k = np.count_nonzero(values == values.max())
            assert set(b[b > 0]) == {1.0 / k}

    def test_smar_picks_highest_predicted_relative(self):
        # Cumulative prices 1 -> (0.5, 2): SMA(2) = (0.75, 1.5), prediction (1.5, 0.75)
        _, _, b = _after("SMAR", [(0.5, 2.0)], window=2)
        np.testing.assert_array_equal(b, [1.0, 0.0])

    def test_smar_constant_market_is_uniform(self):
        _, _, b = _after("SMAR", [(1.0, 1.0, 1.0)] * 3)
        np.testing.assert_allclose(b, np.full(3, 1 / 3))


class TestPamr:
    """Tests for the PAMR step."""

    def test_passive(self):
        spec = StrategySpec("PAMR", epsilon=0.5)
        state = new_state(spec, 2)
        before = state.current_portfolio
        observe(state, np.array([0.4, 0.5]))
        assert next_portfolio(spec, state) is before

    def test_aggressive_projection(self):
        _, _, b = _after("PAMR", [(1.2, 0.8)], epsilon=0.5)
        np.testing.assert_allclose(b, [0.0, 1.0], atol=1e-12)

    def test_no_spread_means_no_trade(self):
        _, _, b = _after("PAMR", [(1.0, 1.0)], epsilon=0.5)
        np.testing.assert_array_equal(b, [0.5, 0.5])


class TestOlmar:
    """Tests for the OLMAR step."""

    def test_constant_market_keeps_portfolio(self):
        spec = StrategySpec("OLMAR")
        state = new_state(spec, 3)
        before = state.current_portfolio
        observe(state, np.ones(3))
        assert next_portfolio(spec, state) is before

    def test_passive_when_target_met(self):
        from revertbench.strategies import olmar_update

        b = np.array([0.5, 0.5])
        assert olmar_update(b, np.array([0.9, 1.1]), 1.0) is b

    def test_moves_toward_predicted_winner(self):
        # Asset 0 fell, so its moving average sits above its price
        _, _, b = _after("OLMAR", [(1.0, 1.0), (0.8, 1.0)], window=5)
        assert b[0] > 0.5
        assert_portfolio(b)


class TestTco:
    """Tests for the TCO update and step."""

    def test_worked_example(self):
        b = tco_update(np.array([0.5, 0.5]), np.array([1.25, 0.75]), eta=10.0, lam=0.0)
        np.testing.assert_allclose(b, [1.0, 0.0], atol=1e-12)

    def test_large_threshold_returns_b_hat(self):
        b_hat = np.array([0.3, 0.7])
        assert tco_update(b_hat, np.array([1.25, 0.75]), eta=10.0, lam=100.0) is b_hat

    def test_flat_prediction_returns_b_hat(self):
        b_hat = np.array([0.2, 0.3, 0.5])
        assert tco_update(b_hat, np.ones(3), eta=10.0, lam=0.0) is b_hat

    def test_constant_market_tco2_keeps_holdings(self):
        state, _, b = _after("TCO2", [(1.0, 1.0)] * 3)
        assert b is state.adjusted_portfolio

    def test_aggressiveness_grows_with_eta(self, rng):
        for _ in range(50):
            b_hat = rng.dirichlet(np.ones(4))
            x_pred = rng.uniform(0.5, 1.5, size=4)
            distances = [
                l1_distance(b_hat, tco_target(b_hat, x_pred, eta, 0.0))
                for eta in (0.5, 1.0, 5.0, 10.0, 50.0)
            ]
            assert distances == sorted(distances)

    def test_variant_one_uses_inverse_relatives(self):
        spec = StrategySpec("TCO1")
        state = new_state(spec, 2)
        x = np.array([0.8, 4 / 3])
        observe(state, x)
        expected = tco_update(state.adjusted_portfolio, 1.0 / x, spec.eta, spec.threshold)
        np.testing.assert_allclose(next_portfolio(spec, state), expected)

    def test_literal_eq10_divides_by_relatives(self):
        rows = [(1.1, 0.9), (0.95, 1.05), (1.2, 0.7)]
        state, spec, _ = _after("TCO2", rows[:-1], literal_eq10=True)
        observe(state, np.array(rows[-1]))
        x_t = state.last_relative
        expected = tco_update(
            state.adjusted_portfolio, sma(state.prices, 5) / x_t, spec.eta, spec.threshold
        )
        np.testing.assert_allclose(step_tco(state, x_t, spec, variant=2), expected)

    def test_unknown_variant(self):
        spec = StrategySpec("TCO1")
        state = new_state(spec, 2)
        observe(state, np.array([1.0, 1.1]))
        with pytest.raises(ValidationError):
            step_tco(state, state.last_relative, spec, variant=3)


class TestStateWindow:
    """The price window holds cumulative prices from a unit base row."""

    def test_window_capacity(self):
        state, _, _ = _after("OLMAR", [(2.0, 1.0)] * 10, window=3)
        assert state.prices.shape == (4, 2)
        np.testing.assert_allclose(state.prices[-1], [2.0**10, 1.0])
        assert state.day_index == 10

    def test_base_row_counts_in_warm_up(self):
        state, _, _ = _after("SMAR", [(3.0,)], window=5)
        np.testing.assert_allclose(state.prices[:, 0], [1.0, 3.0])
