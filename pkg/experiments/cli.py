#!/usr/bin/env python3
"""Command-line interface for the counted-transfer experiments.

Usage:
    ctsim all --seed 42 --out results
    ctsim market-table --config scenario.yaml
    ctsim ledger-fuzz --ops 100000 --shards 4
    ctsim all --config results/manifest.yaml --out rerun
    ctsim verify --out results --tolerance-profile paper
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Dict, Optional

from costs import CostModelError
from credit import CreditError
from econ import EconError
from experiments.errors import ExperimentError, VerificationError
from experiments.runner import ALL, SUBCOMMANDS, ExperimentRunner, RunResult
from experiments.scenario import MAX_SEED, ScenarioConfig, load_scenario
from experiments.verifier import PROFILES, VerificationResult, verify_outputs
from ledger import LedgerError
from market import MarketError
from popgen import PopgenError

logger = logging.getLogger(__name__)

DOMAIN_ERRORS = (
    ExperimentError,
    LedgerError,
    EconError,
    MarketError,
    CreditError,
    PopgenError,
    CostModelError,
)

_DESCRIPTIONS = {
    'ledger-fuzz': 'Fuzz the ledger and write the post-cap path table',
    'econ-tables': 'Valuation and marginal mobility cost tables',
    'market-table': 'Wash-trading profitability, break-even and trajectories',
    'leverage-table': 'Leverage bounds under transfer caps',
    'cascade': 'Liquidation cascades under price shocks',
    'popgen-tables': 'Calibrated transfer-count populations',
    'costs-tables': 'Gas overhead, bypass break-even and mitigations',
    ALL: 'Run every experiment',
}


def _seed(text: str) -> int:
    try:
        value = int(text, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text}") from None
    if not 0 <= value <= MAX_SEED:
        raise argparse.ArgumentTypeError(f"seed must fit in 64 unsigned bits: {text}")
    return value


def _positive(text: str) -> int:
    try:
        value = int(text, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text}")
    return value


def setup_argparser() -> argparse.ArgumentParser:
    """Set up the argument parser.

    Returns:
        Configured ArgumentParser.
    """
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        '--config', '-c',
        help='Scenario YAML or a manifest.yaml from an earlier run',
    )
    common.add_argument(
        '--seed',
        type=_seed,
        help='Unsigned 64-bit seed (overrides the scenario)',
    )
    common.add_argument(
        '--out', '-o',
        help='Output directory (overrides the scenario)',
    )
    common.add_argument(
        '--verbose', '-v',
        action='store_true',
        help='Enable debug logging',
    )

    fuzzing = argparse.ArgumentParser(add_help=False)
    fuzzing.add_argument(
        '--ops',
        type=_positive,
        help='Randomized ledger operations',
    )
    fuzzing.add_argument(
        '--shards',
        type=_positive,
        help='Independent ledgers to spread tokens over',
    )

    parser = argparse.ArgumentParser(
        prog='ctsim',
        description='Reproduce the counted-transfer token experiments as CSV tables.',
        epilog='Example: ctsim all --seed 42 && ctsim verify',
    )
    subparsers = parser.add_subparsers(dest='command', metavar='COMMAND')
    subparsers.required = True

    for name in SUBCOMMANDS + (ALL,):
        parents = [common, fuzzing] if name in ('ledger-fuzz', ALL) else [common]
        subparsers.add_parser(name, parents=parents, help=_DESCRIPTIONS[name])

    verify = subparsers.add_parser('verify', parents=[common],
                                   help='Check outputs against the reference tables')
    verify.add_argument(
        '--tolerance-profile',
        choices=PROFILES,
        default='paper',
        help='paper: reference values with tolerances; strict: regenerate and compare text',
    )

    return parser


def build_overrides(args: argparse.Namespace) -> Dict[str, Any]:
    """Map command-line flags to dotted scenario keys."""
    return {
        'seed': args.seed,
        'output_dir': args.out,
        'ledger.ops': getattr(args, 'ops', None),
        'ledger.shards': getattr(args, 'shards', None),
    }


def configure_logging(scenario: ScenarioConfig, verbose: bool) -> None:
    level = logging.DEBUG if verbose else getattr(logging, scenario.logging.level.upper(), logging.INFO)
    logging.basicConfig(level=level, format=scenario.logging.format, force=True)


def error_line(error: BaseException) -> str:
    """Single machine-parsable line describing an error."""
    detail = str(error).replace('\\', '\\\\').replace('"', '\\"').replace('\n', ' ')
    return f'error={type(error).__name__} detail="{detail}"'


def print_run_summary(result: RunResult) -> None:
    print(f"\n{result.subcommand}: {len(result.outputs)} files")
    for name, path in result.outputs.items():
        print(f"  {name} -> {path}")
    print(f"Manifest: {result.manifest_path}")


def print_verification(result: VerificationResult) -> None:
    status = "PASS" if result.success else "FAIL"
    print(f"\nverify ({result.profile}): {status}")
    print(f"  Cells checked: {result.checked}")
    print(f"  Mismatches: {len(result.mismatches)}")
    if result.missing_files:
        print(f"  Missing files: {', '.join(result.missing_files)}")
    for check in result.failed_checks:
        print(f"  Failed check: {check}")
    print(f"  {result.summary}")


def main(argv: Optional[list] = None) -> int:
    """Main entry point for the CLI.

    Args:
        argv: Command-line arguments (default: sys.argv[1:]).

    Returns:
        Exit code (0 for success, 1 for run or verification failures).
    """
    parser = setup_argparser()
    args = parser.parse_args(argv)

    try:
        scenario = load_scenario(args.config, build_overrides(args))
        configure_logging(scenario, args.verbose)

        if args.command == 'verify':
            out_dir = Path(scenario.output_dir)
            verification = verify_outputs(out_dir, args.tolerance_profile)
            print_verification(verification)
            if not verification.success:
                raise VerificationError(verification.summary)
            return 0

        runner = ExperimentRunner(scenario)
        result = runner.run(args.command, Path(scenario.output_dir))
        print_run_summary(result)
        return 0

    except DOMAIN_ERRORS as e:
        print(error_line(e), file=sys.stderr)
        return 1
    except KeyboardInterrupt:
        print("\nAborted.", file=sys.stderr)
        return 130
    except Exception as e:
        logger.exception("Unexpected error")
        print(error_line(e), file=sys.stderr)
        return 1


if __name__ == '__main__':
    sys.exit(main())
