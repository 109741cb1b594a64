"""Tests for the ctsim command line."""

import pytest
import yaml

from experiments.cli import error_line, main, setup_argparser
from experiments.manifest import MANIFEST_NAME, read_manifest
from utils import read_csv


def _error_lines(capsys):
    return [line for line in capsys.readouterr().err.splitlines() if line.startswith('error=')]


def test_costs_tables_writes_files_and_manifest(tmp_path, capsys):
    assert main(['costs-tables', '--out', str(tmp_path)]) == 0
    assert (tmp_path / 'table8.csv').exists()
    assert (tmp_path / MANIFEST_NAME).exists()
    assert "costs-tables: 5 files" in capsys.readouterr().out


def test_ledger_fuzz_flags_reach_the_run(tmp_path):
    code = main(['ledger-fuzz', '--ops', '150', '--shards', '2', '--seed', '5', '--out', str(tmp_path)])
    assert code == 0
    metrics = {row['metric']: row['value'] for row in read_csv(tmp_path / 'ledger_fuzz.csv')}
    assert metrics['ops'] == '150'
    assert metrics['seed'] == '5'
    assert metrics['passed'] == 'true'

    manifest = read_manifest(tmp_path)
    assert manifest.seed == 5
    assert manifest.config['ledger']['shards'] == 2


def test_manifest_reproduces_run(tmp_path):
    first, second = tmp_path / "first", tmp_path / "second"
    assert main(['market-table', '--seed', '9', '--out', str(first)]) == 0
    assert main(['market-table', '--config', str(first / MANIFEST_NAME), '--out', str(second)]) == 0
    for name in ('table6.csv', 'fig6.csv', 'fig6b.csv', 'fig7.csv'):
        assert (first / name).read_bytes() == (second / name).read_bytes()


def test_verify_strict_after_run(tmp_path, capsys):
    assert main(['leverage-table', '--out', str(tmp_path)]) == 0
    assert main(['verify', '--out', str(tmp_path), '--tolerance-profile', 'strict']) == 0
    assert "verify (strict): PASS" in capsys.readouterr().out


def test_verify_failure_exits_one(tmp_path, capsys):
    assert main(['verify', '--out', str(tmp_path)]) == 1
    assert _error_lines(capsys)[0].startswith('error=VerificationError detail="missing file: ')


def test_missing_config_is_a_scenario_error(tmp_path, capsys):
    assert main(['cascade', '--config', str(tmp_path / 'absent.yaml')]) == 1
    assert _error_lines(capsys)[0].startswith('error=ScenarioError ')


def test_invalid_scenario_value(tmp_path, capsys):
    path = tmp_path / "s.yaml"
    path.write_text(yaml.safe_dump({'market': {'alpha': -1.0}}), encoding='utf-8')
    assert main(['market-table', '--config', str(path), '--out', str(tmp_path / 'out')]) == 1
    assert _error_lines(capsys)


@pytest.mark.parametrize("argv", [
    [],
    ['simulate'],
    ['ledger-fuzz', '--ops', '0'],
    ['ledger-fuzz', '--seed', '-3'],
    ['cascade', '--seed', str(2 ** 64)],
    ['verify', '--tolerance-profile', 'loose'],
    ['cascade', '--ops', '10'],
])
def test_usage_errors_exit_two(argv):
    with pytest.raises(SystemExit) as excinfo:
        main(argv)
    assert excinfo.value.code == 2


def test_every_subcommand_is_registered():
    parser = setup_argparser()
    for command in ('ledger-fuzz', 'econ-tables', 'market-table', 'leverage-table',
                    'cascade', 'popgen-tables', 'costs-tables', 'all', 'verify'):
        assert parser.parse_args([command]).command == command


def test_error_line_escapes_quotes():
    line = error_line(ValueError('bad "value"\nhere'))
    assert line == 'error=ValueError detail="bad \\"value\\" here"'
