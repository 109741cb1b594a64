"""Tests for the gas table, bypass economics and mitigation catalog."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from costs import (
    SUITABILITY,
    SUITABILITY_STANDARDS,
    BypassParams,
    CostParameterError,
    GasOperation,
    GasTable,
    NotApplicableError,
    UnknownMitigationError,
    UnknownOperationError,
    break_even_transfers,
    bypass_cost,
    bypass_curve,
    direct_cost,
    lookup,
    mitigation_catalog,
    overhead,
    security_summary,
    table8,
    tradeoff_rows,
)


class TestGasTable:
    @pytest.mark.parametrize("operation,expected", [
        (GasOperation.MINT, 0.0),
        (GasOperation.TRANSFER_FIRST, 10.9),
        (GasOperation.TRANSFER_NEAR_CAP, 11.3),
        (GasOperation.APPROVE_TRANSFER, 7.3),
    ])
    def test_overheads(self, operation, expected):
        assert overhead(GasTable(), operation) == pytest.approx(expected, abs=0.05)

    @pytest.mark.parametrize("operation", ["mint_with_limit", "set_limit"])
    def test_no_erc721_counterpart(self, operation):
        with pytest.raises(NotApplicableError):
            overhead(GasTable(), operation)

    def test_operation_by_name(self):
        assert GasTable().gas("transfer_first") == (48_947, 54_283)

    def test_unknown_operation(self):
        with pytest.raises(UnknownOperationError):
            GasTable().gas("safe_transfer")

    def test_rows_in_order_with_labels(self):
        rows = table8()
        assert [row.operation.label for row in rows] == [
            "Mint", "Mint + setLimit", "Transfer (first)", "Transfer (near cap)",
            "Approve + transfer", "setTransferLimit",
        ]
        assert rows[1].erc721 is None
        assert rows[1].overhead is None
        assert rows[5].erc7634 == 23_496

    def test_from_dict_overrides_one_entry(self):
        table = GasTable.from_dict({'erc7634': {'transfer_first': 60_000}})
        assert table.gas(GasOperation.TRANSFER_FIRST) == (48_947, 60_000)
        assert table.gas(GasOperation.MINT) == (51_316, 51_316)

    def test_from_dict_rejects_unknown_standard(self):
        with pytest.raises(CostParameterError):
            GasTable.from_dict({'erc1155': {'mint': 1}})

    def test_from_dict_rejects_non_integer(self):
        with pytest.raises(CostParameterError):
            GasTable.from_dict({'erc721': {'mint': "lots"}})

    def test_counted_transfer_cannot_be_cheaper(self):
        with pytest.raises(CostParameterError):
            GasTable.from_dict({'erc7634': {'transfer_first': 40_000}})

    def test_to_dict_round_trips(self):
        table = GasTable()
        assert GasTable.from_dict(table.to_dict()) == table


class TestBypass:
    def test_break_even_is_221(self):
        assert break_even_transfers() == 221

    def test_wrapper_cheaper_from_break_even_on(self):
        params = BypassParams()
        n = break_even_transfers(params)
        assert bypass_cost(n, params).gas <= direct_cost(n, params)
        assert bypass_cost(n - 1, params).gas > direct_cost(n - 1, params)

    def test_deployment_costs_forty_dollars(self):
        summary = security_summary()
        assert summary.deploy_usd == pytest.approx(40.0)
        assert summary.saving_per_transfer == 2_282
        assert summary.gas_price_gwei == 30.0

    def test_never_when_wrapper_transfers_cost_more(self):
        params = BypassParams(g_wrapper_transfer=60_000)
        assert break_even_transfers(params) is None
        assert security_summary(params).break_even is None

    def test_cost_in_eth_and_usd(self):
        params = BypassParams(eth_price_usd=2_000.0)
        cost = bypass_cost(0, params)
        assert cost.gas == 504_283
        assert cost.eth == pytest.approx(504_283 * 30e-9)
        assert cost.usd == pytest.approx(cost.eth * 2_000.0)

    def test_curve_crosses_once(self):
        curve = bypass_curve(max_n=400)
        assert len(curve) == 401
        crossings = [n for n, direct, wrapper in curve if wrapper <= direct]
        assert crossings[0] == 221
        assert crossings == list(range(221, 401))

    def test_negative_n(self):
        with pytest.raises(CostParameterError):
            bypass_cost(-1)
        with pytest.raises(CostParameterError):
            direct_cost(-1)

    @pytest.mark.parametrize("kwargs", [{'g_deploy': 0}, {'gas_price_gwei': -1.0},
                                        {'eth_price_usd': 0.0}])
    def test_invalid_params(self, kwargs):
        with pytest.raises(CostParameterError):
            BypassParams(**kwargs)

    def test_params_from_dict(self):
        params = BypassParams.from_dict({'gas_price_gwei': 50.0, 'eth_price_usd': None})
        assert params.gas_price_gwei == 50.0
        assert params.eth_price_usd == BypassParams().eth_price_usd
        with pytest.raises(CostParameterError):
            BypassParams.from_dict({'gas_limit': 1})


class TestMitigations:
    def test_catalog(self):
        catalog = mitigation_catalog()
        assert [m.extra_gas for m in catalog] == [8_200, 12_400, 15_600, 5_100, 0]
        scored = [m for m in catalog if m.resistance_score is not None]
        assert [(m.key, m.resistance_score, m.composability_score) for m in scored] == [
            ("ERC-6982", 85.0, 55.0)
        ]

    @pytest.mark.parametrize("name", ["cooldown", "COOLDOWN", "Transfer cooldown period"])
    def test_lookup(self, name):
        assert lookup(name).extra_gas == 5_100

    def test_lookup_unknown(self):
        with pytest.raises(UnknownMitigationError):
            lookup("firewall")

    def test_tradeoff_overhead_relative_to_direct_transfer(self):
        rows = {row[0]: row for row in tradeoff_rows(54_283)}
        assert rows["No mitigation (baseline)"][2] == 0.0
        assert rows["ERC-6982 lockable integration"][2] == pytest.approx(15_600 / 54_283 * 100.0)

    def test_suitability_scores(self):
        assert SUITABILITY_STANDARDS[-1] == "ERC-7634"
        assert len(SUITABILITY) == 8
        assert all(0 <= score <= 5 for row in SUITABILITY.values() for score in row)
        assert SUITABILITY["Gaming items"][3] == 5


class TestBreakEvenSensitivity:
    @given(a=st.integers(1, 5_000_000), b=st.integers(1, 5_000_000))
    def test_non_decreasing_in_deployment_gas(self, a, b):
        low, high = sorted((a, b))
        cheap = break_even_transfers(BypassParams(g_deploy=low))
        costly = break_even_transfers(BypassParams(g_deploy=high))
        assert cheap <= costly

    @given(a=st.integers(1, 54_282), b=st.integers(1, 54_282))
    def test_non_increasing_in_per_transfer_saving(self, a, b):
        # a cheaper wrapper transfer means a larger saving
        cheap_wrapper, dear_wrapper = sorted((a, b))
        large_saving = break_even_transfers(BypassParams(g_wrapper_transfer=cheap_wrapper))
        small_saving = break_even_transfers(BypassParams(g_wrapper_transfer=dear_wrapper))
        assert large_saving <= small_saving
