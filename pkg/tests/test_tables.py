"""Tests for CSV formatting helpers."""

import pytest

from utils import fmt_fixed, fmt_optional, read_csv, read_rows, sha256_file, write_csv


@pytest.mark.parametrize("value,decimals,expected", [
    (2.995, 2, "3.00"),
    (2.985, 2, "2.99"),
    (-10.025, 2, "-10.03"),
    (-0.001, 2, "0.00"),
    (0.0, 1, "0.0"),
    (34.25, 1, "34.3"),
    (7, 0, "7"),
])
def test_fmt_fixed_rounds_half_away_from_zero(value, decimals, expected):
    assert fmt_fixed(value, decimals) == expected


def test_fmt_optional():
    assert fmt_optional(None) == "N/A"
    assert fmt_optional(None, missing="--") == "--"
    assert fmt_optional(True) == "true"
    assert fmt_optional(221) == "221"
    assert fmt_optional(10.94, 1) == "10.9"
    assert fmt_optional("Yes") == "Yes"


def test_csv_round_trip_and_checksum(tmp_path):
    path = write_csv(tmp_path / "nested" / "t.csv", ["a", "b"], [["x", 1], ["y, z", 2.5]])
    assert path.read_text(encoding='utf-8') == 'a,b\nx,1\n"y, z",2.5\n'
    assert read_csv(path) == [{'a': 'x', 'b': '1'}, {'a': 'y, z', 'b': '2.5'}]

    other = write_csv(tmp_path / "u.csv", ["a", "b"], [["x", 1], ["y, z", 2.5]])
    assert sha256_file(path) == sha256_file(other)


def test_read_rows_keeps_cells_as_written(tmp_path):
    path = write_csv(tmp_path / "t.csv", ["L", "shock"], [["10", "0.50"], ["50", "1.00"]])
    assert read_rows(path) == (["L", "shock"], [["10", "0.50"], ["50", "1.00"]])


def test_read_rows_empty_file(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_text("", encoding='utf-8')
    assert read_rows(path) == ([], [])
    assert read_csv(path) == []
