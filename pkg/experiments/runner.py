"""Experiment runner.

Each subcommand has a producer that builds its CSV tables in memory from the
scenario. ``run`` writes them in order, then the manifest. Producing and
writing are separate so that strict verification can regenerate tables
without touching the output directory.
"""

import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional

from costs import (
    SUITABILITY,
    SUITABILITY_STANDARDS,
    BypassParams,
    GasOperation,
    GasTable,
    bypass_curve,
    security_summary,
    table8,
    tradeoff_rows,
)
from credit import (
    LeverageScenario,
    build_chain,
    cascade_curves,
    cosimulate,
    leverage_by_depth,
    max_leverage,
    table7,
    unbounded_leverage,
)
from econ import Power, concave_across_limits, default_models, marginal_cost_curve, table4, table5, value_curve
from experiments.errors import InvariantViolationError, UnknownSubcommandError
from experiments.manifest import ARTIFACT_VERSION, RunManifest, write_manifest
from experiments.scenario import ScenarioConfig
from ledger import enumerate_liveness, post_cap_paths, run_fuzz
from market import WashScenario, break_even_by_limit, table6, trajectory
from popgen import (
    CAP_GUIDANCE,
    COLLECTIONS,
    GENERATOR_NAME,
    TABLE2_TARGETS,
    CollectionProfile,
    calibrate_all,
    cap_guidance,
    exceed_fraction,
    histogram,
    sample_all,
    stats,
)
from utils import fmt_fixed, fmt_optional, sha256_file, write_csv

logger = logging.getLogger(__name__)

SUBCOMMANDS = (
    'ledger-fuzz',
    'econ-tables',
    'market-table',
    'leverage-table',
    'cascade',
    'popgen-tables',
    'costs-tables',
)
ALL = 'all'


@dataclass
class Table:
    """A CSV table with pre-formatted cells."""
    name: str
    header: List[str]
    rows: List[List[str]] = field(default_factory=list)

    @property
    def filename(self) -> str:
        return f"{self.name}.csv"

    def add(self, *cells: str) -> None:
        self.rows.append(list(cells))


@dataclass
class RunResult:
    """Files written by a run."""
    subcommand: str
    outputs: Dict[str, Path]
    manifest_path: Path


class ExperimentRunner:
    """Produces and writes the tables of every subcommand for one scenario."""

    def __init__(self, scenario: ScenarioConfig):
        self.scenario = scenario
        self.failures: List[str] = []
        self._producers: Dict[str, Callable[[], List[Table]]] = {
            'ledger-fuzz': self._ledger_tables,
            'econ-tables': self._econ_tables,
            'market-table': self._market_tables,
            'leverage-table': self._credit_tables,
            'cascade': self._cascade_tables,
            'popgen-tables': self._popgen_tables,
            'costs-tables': self._costs_tables,
        }

    def produce(self, subcommand: str) -> List[Table]:
        """Build the tables of a subcommand (or of all of them) in memory.

        Raises:
            UnknownSubcommandError: If the subcommand does not exist.
        """
        if subcommand == ALL:
            names = list(SUBCOMMANDS)
        elif subcommand in self._producers:
            names = [subcommand]
        else:
            raise UnknownSubcommandError(f"Unknown experiment: {subcommand}")

        self.failures = []
        tables: List[Table] = []
        for name in names:
            logger.info(f"Running {name}")
            tables.extend(self._producers[name]())
        return tables

    def run(self, subcommand: str, out_dir: Optional[Path] = None) -> RunResult:
        """Produce, write and checksum the outputs of a subcommand.

        Args:
            subcommand: One of SUBCOMMANDS or 'all'.
            out_dir: Output directory; the scenario's output_dir when omitted.

        Returns:
            RunResult naming every file written.

        Raises:
            UnknownSubcommandError: If the subcommand does not exist.
            InvariantViolationError: If an invariant check failed. Outputs
                and manifest are written first.
        """
        tables = self.produce(subcommand)
        out = Path(out_dir) if out_dir is not None else Path(self.scenario.output_dir)

        outputs: Dict[str, Path] = {}
        for table in tables:
            outputs[table.filename] = write_csv(out / table.filename, table.header, table.rows)
        logger.info(f"Wrote {len(outputs)} tables to {out}")

        manifest = RunManifest(
            subcommand=subcommand,
            config=self.scenario.to_dict(),
            seed=self.scenario.seed,
            generator=GENERATOR_NAME,
            version=ARTIFACT_VERSION,
            eth_price_usd=self._bypass_params().eth_price_usd,
            checksums={name: sha256_file(path) for name, path in outputs.items()},
        )
        manifest_path = write_manifest(out, manifest)

        if self.failures:
            raise InvariantViolationError("; ".join(self.failures))
        return RunResult(subcommand=subcommand, outputs=outputs, manifest_path=manifest_path)

    # ledger-fuzz

    def _ledger_tables(self) -> List[Table]:
        block = self.scenario.ledger
        report = run_fuzz(
            ops=block.ops,
            tokens=block.tokens,
            seed=self.scenario.seed,
            shards=block.shards,
            max_limit=block.max_limit,
            unbounded_fraction=block.unbounded_fraction,
            allow_unbounded_reset=block.allow_unbounded_reset,
        )
        liveness = enumerate_liveness(block.liveness_max_value)

        if not report.passed:
            self.failures.append(
                f"ledger fuzz: {report.safety_violations} safety, "
                f"{report.liveness_violations} liveness, "
                f"{report.consistency_violations} consistency violations, "
                f"{report.replay_mismatches} replay mismatches"
            )
        if not liveness.passed:
            self.failures.append(f"liveness enumeration: {liveness.violations[0]}")

        fuzz = Table('ledger_fuzz', ['metric', 'value'])
        for metric, value in (
            ('seed', report.seed),
            ('ops', report.ops),
            ('tokens', report.tokens),
            ('tokens_replaced', report.replacements),
            ('transfers_ok', report.transfers_ok),
            ('transfers_rejected', report.transfers_rejected),
            ('policy_triggers', report.policy_triggers),
            ('events', report.events),
            ('safety_violations', report.safety_violations),
            ('liveness_violations', report.liveness_violations),
            ('consistency_violations', report.consistency_violations),
            ('replay_mismatches', report.replay_mismatches),
            ('liveness_states', liveness.states),
            ('liveness_attempts', liveness.attempts),
            ('liveness_mismatches', len(liveness.violations)),
        ):
            fuzz.add(metric, str(value))
        for name, count in report.rejections.items():
            fuzz.add(f"rejected.{name}", str(count))
        fuzz.add('passed', fmt_optional(report.passed and liveness.passed))

        paths = Table('table10', ['path', 'companion', 'trigger', 'use_case'])
        for row in post_cap_paths():
            paths.add(row.path, row.companion, row.trigger, row.use_case)
        return [paths, fuzz]

    # econ-tables

    def _econ_tables(self) -> List[Table]:
        block = self.scenario.econ
        models = default_models(block.concave_gamma, block.convex_gamma,
                                block.threshold_tau, block.threshold_residual)
        labels = [model.label for model in models]
        concave = Power(block.concave_gamma)

        valuation = Table('table4', ['remaining', 'ratio'] + labels)
        for row in table4(block.v_base, block.limit, models):
            valuation.add(str(row.remaining), fmt_fixed(row.ratio, 2),
                          *(fmt_fixed(row.values[label], 2) for label in labels))

        marginal = Table('table5', ['stage'] + [f"L={limit}" for limit in block.limits])
        for stage in table5(block.v_base, block.limits, concave):
            marginal.add(stage.stage, *(fmt_optional(stage.percents[limit], 1) for limit in block.limits))

        curves = Table('fig5', ['panel', 'model', 'limit', 'remaining', 'value'])
        for label, remaining, value in value_curve(models, block.v_base, block.limit):
            curves.add('models', label, str(block.limit), str(remaining), fmt_fixed(value, 4))
        for limit, remaining, value in concave_across_limits(block.limits, block.v_base,
                                                            block.concave_gamma):
            curves.add('limits', concave.label, str(limit), str(remaining), fmt_fixed(value, 4))

        cost = Table('mobility_cost', ['limit', 'transfer', 'cost_pct'])
        for limit, transfer, pct in marginal_cost_curve(concave, block.limits, block.v_base):
            cost.add(str(limit), str(transfer), fmt_fixed(pct, 3))

        return [valuation, marginal, curves, cost]

    # market-table

    def _market_tables(self) -> List[Table]:
        block = self.scenario.market

        profitability = Table('table6', ['L', 'n', 'profit_nocap', 'fair_value', 'max_sell',
                                         'profit_cap', 'deterred'])
        for row in table6(block.pairs, block.v_base, block.alpha, block.g):
            profitability.add(str(row.limit), str(row.n), fmt_fixed(row.profit_nocap, 2),
                              fmt_fixed(row.fair_value, 2), fmt_fixed(row.max_sell, 2),
                              fmt_fixed(row.profit_cap, 2), 'Yes' if row.deterred else 'No')

        profit = Table('fig6', ['L', 'n', 'profit_cap', 'profit_nocap'])
        values = Table('fig7', ['L', 'n', 'fair_value', 'max_sell'])
        for limit in block.limits:
            for point in trajectory(WashScenario(limit, block.v_base, block.alpha, block.g)):
                profit.add(str(limit), str(point.n), fmt_fixed(point.profit_cap, 4),
                           fmt_fixed(point.profit_nocap, 4))
                values.add(str(limit), str(point.n), fmt_fixed(point.fair_value, 4),
                           fmt_fixed(point.max_sell, 4))

        break_even = Table('fig6b', ['L', 'break_even'])
        for limit, n_star in break_even_by_limit(block.limits, block.v_base, block.alpha, block.g):
            break_even.add(str(limit), fmt_optional(n_star, missing='Never'))

        return [profitability, profit, break_even, values]

    # leverage-table

    def _credit_tables(self) -> List[Table]:
        block = self.scenario.credit

        leverage = Table('table7', ['L', 'max_depth', 'exposure', 'leverage', 'reduction_pct'])
        for row in table7(block.limits, block.ltv, block.v0):
            leverage.add(str(row.limit), fmt_optional(row.max_depth, missing='unbounded'),
                         fmt_fixed(row.exposure, 2), fmt_fixed(row.leverage, 2),
                         fmt_fixed(row.reduction, 1))

        for limit in block.limits:
            scenario = LeverageScenario(limit, block.ltv, block.v0)
            simulated = cosimulate(scenario, block.value_floor)
            expected = build_chain(scenario, block.value_floor)
            if simulated.chain.depth != expected.depth or not math.isclose(
                    simulated.chain.exposure, expected.exposure, rel_tol=1e-9):
                self.failures.append(
                    f"co-simulation L={limit}: {simulated.chain.depth} cycles on the ledger, "
                    f"{expected.depth} expected"
                )

        ceiling = fmt_fixed(unbounded_leverage(block.ltv), 4)
        curves = Table('fig8', ['panel', 'x', 'leverage', 'unbounded'])
        for depth, total in leverage_by_depth(block.ltv, block.curve_depth):
            curves.add('depth', str(depth), fmt_fixed(total, 4), ceiling)
        for limit in range(1, block.curve_max_limit + 1):
            total = max_leverage(LeverageScenario(limit, block.ltv, block.v0))
            curves.add('limit', str(limit), fmt_fixed(total, 4), ceiling)

        return [leverage, curves]

    # cascade

    def _cascade_tables(self) -> List[Table]:
        block = self.scenario.cascade
        points = Table('fig9', ['L', 'shock', 'cascade_depth', 'aggregate_loss'])
        for point in cascade_curves(block.limits, block.shocks, block.ltv, block.v0, block.penalty):
            points.add(str(point.limit), fmt_fixed(point.shock, 2), str(point.cascade_depth),
                       fmt_fixed(point.aggregate_loss, 4))
        return [points]

    # popgen-tables

    def _popgen_tables(self) -> List[Table]:
        block = self.scenario.popgen
        to_fit = {name: TABLE2_TARGETS[name] for name in COLLECTIONS if name not in block.alphas}
        fitted = calibrate_all(to_fit, block.x_max, block.n_tokens)

        profiles = []
        for name in COLLECTIONS:
            if name in block.alphas:
                profiles.append(CollectionProfile(name, float(block.alphas[name]),
                                                  block.x_max, block.n_tokens))
            else:
                profiles.append(fitted[name].profile)
        populations = sample_all(profiles, self.scenario.seed)

        guidance_caps = sorted({cap for pair in CAP_GUIDANCE.values() for cap in pair} | set(block.caps))
        summary = Table('table2', ['collection', 'alpha', 'mean', 'median', 'p90', 'p95', 'p99'])
        exceed = Table('table3', ['collection'] + [f"L={cap}" for cap in block.caps])
        counts = Table('fig3', ['collection', 'transfer_count', 'tokens'])
        fractions = {}

        for profile in profiles:
            population = populations[profile.name]
            result = stats(population)
            summary.add(profile.name, fmt_fixed(profile.alpha, 3), fmt_fixed(result.mean, 2),
                        str(result.median), str(result.p90), str(result.p95), str(result.p99))

            fractions[profile.name] = exceed_fraction(population, guidance_caps)
            exceed.add(profile.name, *(fmt_fixed(fractions[profile.name][cap], 1) for cap in block.caps))

            for value, tokens in histogram(population):
                counts.add(profile.name, str(value), str(tokens))

        guidance = Table('cap_guidance', ['collection', 'cap_low', 'cap_high',
                                          'unaffected_low_pct', 'unaffected_high_pct'])
        for name, low, high, at_low, at_high in cap_guidance(fractions):
            guidance.add(name, str(low), str(high), fmt_fixed(at_low, 1), fmt_fixed(at_high, 1))

        return [summary, exceed, counts, guidance]

    # costs-tables

    def _bypass_params(self) -> BypassParams:
        return BypassParams.from_dict(self.scenario.costs.bypass)

    def _costs_tables(self) -> List[Table]:
        block = self.scenario.costs
        gas = GasTable.from_dict(block.gas)
        params = self._bypass_params()

        comparison = Table('table8', ['operation', 'erc721', 'erc7634', 'overhead_pct'])
        for row in table8(gas):
            comparison.add(row.operation.label, fmt_optional(row.erc721, missing='--'),
                           str(row.erc7634), fmt_optional(row.overhead, 1))

        suitability = Table('table9', ['use_case'] + list(SUITABILITY_STANDARDS))
        for use_case, scores in SUITABILITY.items():
            suitability.add(use_case, *(str(score) for score in scores))

        curve = Table('fig10a', ['n', 'direct_gas', 'wrapper_gas'])
        for n, direct, wrapped in bypass_curve(params, block.curve_max_n):
            curve.add(str(n), str(direct), str(wrapped))

        direct_gas = gas.erc7634[GasOperation.TRANSFER_FIRST]
        tradeoffs = Table('fig10b', ['mitigation', 'extra_gas', 'gas_overhead_pct',
                                     'bypass_resistance_pct', 'composability_pct'])
        for name, extra, pct, resistance, composability in tradeoff_rows(direct_gas):
            tradeoffs.add(name, str(extra), fmt_fixed(pct, 1),
                          fmt_optional(resistance, 0, missing='Unspecified'),
                          fmt_optional(composability, 0, missing='Unspecified'))

        summary = security_summary(params)
        security = Table('security', ['metric', 'value'])
        security.add('break_even_transfers', fmt_optional(summary.break_even, missing='Never'))
        security.add('deploy_gas', str(summary.deploy_gas))
        security.add('deploy_usd', fmt_fixed(summary.deploy_usd, 2))
        security.add('saving_per_transfer_gas', str(summary.saving_per_transfer))
        security.add('gas_price_gwei', fmt_fixed(summary.gas_price_gwei, 1))
        security.add('eth_price_usd', fmt_fixed(summary.eth_price_usd, 2))

        return [comparison, suitability, curve, tradeoffs, security]
