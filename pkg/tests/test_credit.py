"""Tests for leverage bounds, ledger co-simulation and liquidation cascades."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from credit import (
    CreditParameterError,
    LeverageChain,
    LeverageScenario,
    Position,
    build_chain,
    cascade,
    cascade_curves,
    cosimulate,
    leverage_by_depth,
    max_depth,
    max_leverage,
    reduction_vs_unbounded,
    table7,
    unbounded_leverage,
)

TABLE7 = {
    4: (2, 21.90, 2.19, 34.3),
    6: (3, 25.33, 2.533, 24.0),
    10: (5, 29.41, 2.941, 11.8),
    20: (10, 32.67, 3.267, 2.0),
    50: (25, 33.33, 3.333, 0.0),
}


class TestLeverageBounds:
    def test_table7(self):
        rows = table7()
        assert [row.limit for row in rows] == list(TABLE7)
        for row in rows:
            depth, exposure, leverage, reduction = TABLE7[row.limit]
            assert row.max_depth == depth
            assert row.exposure == pytest.approx(exposure, abs=0.01)
            assert row.leverage == pytest.approx(leverage, abs=0.001)
            assert row.reduction == pytest.approx(reduction, abs=0.1)

    def test_depth_is_half_the_limit(self):
        assert [max_depth(limit) for limit in (1, 2, 3, 9, 10)] == [0, 1, 1, 4, 5]

    def test_unbounded_depth(self):
        assert max_depth(0) is None
        assert max_leverage(LeverageScenario(0)) == pytest.approx(unbounded_leverage(0.7))
        assert reduction_vs_unbounded(LeverageScenario(0)) == pytest.approx(0.0)

    @given(limit=st.integers(1, 120), ltv=st.floats(0.05, 0.95))
    def test_closed_form_matches_series(self, limit, ltv):
        depth = limit // 2
        series = sum(ltv ** i for i in range(depth + 1))
        assert max_leverage(LeverageScenario(limit, ltv)) == pytest.approx(series, abs=1e-12)

    @given(a=st.integers(1, 100), b=st.integers(1, 100))
    def test_leverage_monotone_in_limit(self, a, b):
        low, high = sorted((a, b))
        assert max_leverage(LeverageScenario(low)) <= max_leverage(LeverageScenario(high))
        assert max_leverage(LeverageScenario(high)) < unbounded_leverage(0.7)

    @given(a=st.integers(1, 100), b=st.integers(1, 100))
    def test_reduction_non_increasing_in_limit(self, a, b):
        low, high = sorted((a, b))
        assert reduction_vs_unbounded(LeverageScenario(high)) <= reduction_vs_unbounded(LeverageScenario(low))

    @pytest.mark.parametrize("kwargs", [
        {'limit': -1},
        {'limit': 4, 'ltv': 0.0},
        {'limit': 4, 'ltv': 1.0},
        {'limit': 4, 'v0': 0.0},
    ])
    def test_invalid_scenarios(self, kwargs):
        with pytest.raises(CreditParameterError):
            LeverageScenario(**kwargs)

    def test_leverage_by_depth(self):
        curve = leverage_by_depth(0.7, 3)
        assert [d for d, _ in curve] == [0, 1, 2, 3]
        assert curve[2][1] == pytest.approx(2.19)


class TestChains:
    def test_chain_stops_at_depth_bound(self):
        chain = build_chain(LeverageScenario(10))
        assert chain.depth == 5
        assert chain.exposure == pytest.approx(29.41, abs=0.01)

    def test_unbounded_chain_stops_at_value_floor(self):
        chain = build_chain(LeverageScenario(0))
        assert all(p.collateral_value >= 0.01 for p in chain.positions)
        assert chain.positions[-1].collateral_value * 0.7 < 0.01

    @pytest.mark.parametrize("limit", [4, 6, 10, 20])
    def test_cosimulation_matches_depth_bound(self, limit):
        scenario = LeverageScenario(limit)
        result = cosimulate(scenario)
        assert result.cycles == max_depth(limit)
        assert result.transfers == limit
        assert result.refused
        expected = build_chain(scenario)
        assert [p.collateral_value for p in result.chain.positions] == pytest.approx(
            [p.collateral_value for p in expected.positions]
        )

    def test_odd_limit_spends_last_transfer_on_a_refused_cycle(self):
        result = cosimulate(LeverageScenario(5))
        assert result.cycles == 2
        assert result.transfers == 5
        assert result.refused

    def test_unbounded_cosimulation_is_floor_bounded(self):
        result = cosimulate(LeverageScenario(0))
        assert not result.refused
        assert result.cycles == build_chain(LeverageScenario(0)).depth


class TestCascade:
    def test_small_shock_liquidates_nothing(self):
        result = cascade(build_chain(LeverageScenario(50)), 0.2)
        assert result.cascade_depth == 0
        assert result.aggregate_loss == 0.0

    def test_shallow_chain_cascades_less(self):
        short = cascade(build_chain(LeverageScenario(10)), 0.3)
        long = cascade(build_chain(LeverageScenario(50)), 0.3)
        assert short.cascade_depth < long.cascade_depth
        assert short.aggregate_loss < long.aggregate_loss

    def test_marked_value_equal_to_debt_liquidates(self):
        chain = LeverageChain([Position(10.0, 5.0)], ltv=0.5)
        assert cascade(chain, 0.5, penalty=0.0).cascade_depth == 1

    def test_survivor_stops_contagion(self):
        chain = LeverageChain([Position(10.0, 8.0), Position(10.0, 1.0), Position(10.0, 8.0)])
        result = cascade(chain, 0.25, penalty=0.1)
        assert result.cascade_depth == 2

    def test_penalty_does_not_accumulate_along_a_run(self):
        chain = LeverageChain([Position(10.0, 7.0)] * 3)
        result = cascade(chain, 0.3, penalty=0.05)
        assert result.cascade_depth == 3
        assert result.aggregate_loss == pytest.approx(1.0, abs=1e-6)

    def test_penalty_pushes_next_position_under(self):
        chain = LeverageChain([Position(10.0, 8.0), Position(10.0, 7.6)])
        assert cascade(chain, 0.21, penalty=0.0).cascade_depth == 1
        assert cascade(chain, 0.21, penalty=0.05).cascade_depth == 2

    @pytest.mark.parametrize("shock,penalty", [(-0.1, 0.05), (1.0, 0.05), (0.3, 1.0)])
    def test_invalid_parameters(self, shock, penalty):
        with pytest.raises(CreditParameterError):
            cascade(build_chain(LeverageScenario(10)), shock, penalty)

    def test_loss_is_monotone_in_shock(self):
        for limit in (10, 50):
            points = [p for p in cascade_curves() if p.limit == limit]
            losses = [p.aggregate_loss for p in points]
            depths = [p.cascade_depth for p in points]
            assert losses == sorted(losses)
            assert depths == sorted(depths)

    @given(a=st.integers(1, 60), b=st.integers(1, 60), shock=st.floats(0.0, 0.95))
    def test_loss_is_monotone_in_chain_depth(self, a, b, shock):
        short, long = sorted((a, b))
        shallow = cascade(build_chain(LeverageScenario(short)), shock)
        deep = cascade(build_chain(LeverageScenario(long)), shock)
        assert shallow.aggregate_loss <= deep.aggregate_loss + 1e-12
        assert shallow.cascade_depth <= deep.cascade_depth

    def test_curves_cover_grid(self):
        points = cascade_curves(limits=(10, 50), shocks=(0.1, 0.3))
        assert [(p.limit, p.shock) for p in points] == [(10, 0.1), (10, 0.3), (50, 0.1), (50, 0.3)]
