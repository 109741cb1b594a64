"""Tests for output verification."""

import shutil

import pytest

from experiments import ExperimentRunner, OutputVerifier, ScenarioConfig, verify_outputs
from experiments.expected import ExpectedCell
from experiments.manifest import MANIFEST_NAME
from experiments.verifier import cell_matches
from utils import read_csv, write_csv

SMALL = {'ledger': {'ops': 300, 'tokens': 20}}


@pytest.fixture(scope="module")
def full_run(tmp_path_factory):
    out = tmp_path_factory.mktemp("full")
    ExperimentRunner(ScenarioConfig.from_dict(SMALL)).run('all', out)
    return out


@pytest.fixture
def run_copy(full_run, tmp_path):
    target = tmp_path / "copy"
    shutil.copytree(full_run, target)
    return target


def _set_cell(path, key_column, key, column, value):
    rows = read_csv(path)
    header = list(rows[0])
    for row in rows:
        if row[key_column] == key:
            row[column] = value
    write_csv(path, header, [[row[name] for name in header] for row in rows])


class TestCellMatching:
    def test_half_unit_of_printed_precision(self):
        assert cell_matches(ExpectedCell('-10.0'), '-10.03')
        assert not cell_matches(ExpectedCell('-10.0'), '-10.06')

    def test_tolerance_wins_when_larger(self):
        assert cell_matches(ExpectedCell('16.0', 5.0), '19.9')

    def test_relative_tolerance(self):
        assert cell_matches(ExpectedCell('10', 0.3, relative=True), '13')
        assert not cell_matches(ExpectedCell('10', 0.3, relative=True), '14')

    def test_text_cells_match_exactly(self):
        assert cell_matches(ExpectedCell('Yes'), 'Yes')
        assert not cell_matches(ExpectedCell('Yes'), 'yes')
        assert not cell_matches(ExpectedCell('1.0'), 'N/A')

    def test_non_finite_rejected(self):
        assert not cell_matches(ExpectedCell('1.0', 100.0), 'nan')


class TestReferenceProfile:
    def test_fresh_outputs_pass(self, full_run):
        result = verify_outputs(full_run, 'paper')
        assert result.success, result.summary
        assert result.checked > 0
        assert result.summary.startswith("All ")

    def test_tampered_cell_fails(self, run_copy):
        _set_cell(run_copy / 'table7.csv', 'L', '10', 'leverage', '9.99')
        result = verify_outputs(run_copy, 'paper')
        assert not result.success
        assert result.summary == "table7.csv row 10 column leverage: expected 2.94, got 9.99"

    def test_missing_file(self, run_copy):
        (run_copy / 'table8.csv').unlink()
        result = verify_outputs(run_copy, 'paper')
        assert not result.success
        assert result.missing_files == ['table8.csv']
        assert result.summary == "missing file: table8.csv"

    def test_missing_row_is_reported(self, run_copy):
        _set_cell(run_copy / 'fig6b.csv', 'L', '5', 'L', '6')
        result = verify_outputs(run_copy, 'paper')
        assert any(c.actual == '<missing row>' for c in result.mismatches)

    def test_cascade_ordering_check(self, run_copy):
        _set_cell(run_copy / 'fig9.csv', 'shock', '0.50', 'aggregate_loss', '0.0')
        result = verify_outputs(run_copy, 'paper')
        assert not result.success
        assert any("decreases as the shock grows" in check for check in result.failed_checks)


class TestStrictProfile:
    @pytest.fixture
    def costs_run(self, tmp_path):
        ExperimentRunner(ScenarioConfig()).run('costs-tables', tmp_path)
        return tmp_path

    def test_regeneration_matches(self, costs_run):
        result = OutputVerifier(costs_run, 'strict').verify()
        assert result.success, result.summary

    def test_any_textual_change_fails(self, costs_run):
        _set_cell(costs_run / 'security.csv', 'metric', 'deploy_usd', 'value', '40.0')
        result = OutputVerifier(costs_run, 'strict').verify()
        assert not result.success
        assert result.summary.startswith("security.csv row ")
        assert any("checksum" in check for check in result.failed_checks)

    def test_extra_row_fails(self, costs_run):
        with open(costs_run / 'table9.csv', 'a', encoding='utf-8') as f:
            f.write("Toys,1,1,1,1\n")
        result = OutputVerifier(costs_run, 'strict').verify()
        assert not result.success

    def test_missing_manifest(self, costs_run):
        (costs_run / MANIFEST_NAME).unlink()
        result = OutputVerifier(costs_run, 'strict').verify()
        assert result.missing_files == [MANIFEST_NAME]


def test_unknown_profile(tmp_path):
    with pytest.raises(ValueError):
        OutputVerifier(tmp_path, 'lenient')
