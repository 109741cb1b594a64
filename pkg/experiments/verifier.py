"""Output verification.

Two profiles:

- ``paper`` compares every printed reference cell against the CSV outputs
  with per-column tolerances, and checks the qualitative cascade and
  cross-collection ordering properties.
- ``strict`` regenerates every table from the manifest's configuration and
  requires textual equality cell by cell.
"""

import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from experiments.errors import ManifestError
from experiments.expected import EXCEED_ORDER, EXPECTED_TABLES, ExpectedCell, ExpectedTable
from experiments.manifest import MANIFEST_NAME, read_manifest
from experiments.runner import ExperimentRunner, Table
from experiments.scenario import ScenarioConfig
from utils import read_rows, sha256_file

logger = logging.getLogger(__name__)

PROFILES = ('paper', 'strict')

# Added to every tolerance to absorb binary rounding of the difference.
EPSILON = 1e-6


@dataclass
class CellComparison:
    """Result of comparing one cell.

    Attributes:
        filename: Output file.
        row: Row label, e.g. "L=5,n=3".
        column: Column name.
        expected: Expected text.
        actual: Actual text, or a placeholder when the row or column is absent.
        match: Whether the cell was accepted.
    """
    filename: str
    row: str
    column: str
    expected: str
    actual: str
    match: bool

    def describe(self) -> str:
        return (f"{self.filename} row {self.row} column {self.column}: "
                f"expected {self.expected}, got {self.actual}")


@dataclass
class VerificationResult:
    """Overall verification result.

    Attributes:
        success: Whether every check passed.
        profile: Tolerance profile used.
        comparisons: Every cell comparison, in check order.
        missing_files: Expected files that do not exist.
        failed_checks: Failed qualitative checks.
        summary: Human-readable summary naming the first failure.
    """
    success: bool
    profile: str
    comparisons: List[CellComparison] = field(default_factory=list)
    missing_files: List[str] = field(default_factory=list)
    failed_checks: List[str] = field(default_factory=list)
    summary: str = ""

    @property
    def mismatches(self) -> List[CellComparison]:
        return [c for c in self.comparisons if not c.match]

    @property
    def checked(self) -> int:
        return len(self.comparisons)


def cell_matches(expected: ExpectedCell, actual: str) -> bool:
    """Compare a cell with its printed reference value.

    Non-numeric references must match textually. Numeric ones are accepted
    within the larger of the cell tolerance and half a unit of the printed
    precision.
    """
    try:
        reference = float(expected.value)
    except ValueError:
        return actual == expected.value
    try:
        value = float(actual)
    except ValueError:
        return False
    if not math.isfinite(value):
        return False

    decimals = len(expected.value.split('.')[1]) if '.' in expected.value else 0
    half_unit = 0.5 * 10 ** -decimals
    tolerance = expected.tolerance * abs(reference) if expected.relative else expected.tolerance
    return abs(value - reference) <= max(tolerance, half_unit) + EPSILON


def _row_label(key_columns: Sequence[str], key: Tuple[str, ...]) -> str:
    if len(key_columns) == 1:
        return key[0]
    return ",".join(f"{column}={value}" for column, value in zip(key_columns, key))


class OutputVerifier:
    """Verifies an output directory against reference values or a fresh regeneration."""

    def __init__(self, out_dir: Path, profile: str = 'paper'):
        """Initialize the verifier.

        Args:
            out_dir: Directory holding the CSV outputs.
            profile: 'paper' or 'strict'.

        Raises:
            ValueError: On an unknown profile.
        """
        if profile not in PROFILES:
            raise ValueError(f"Unknown tolerance profile: {profile}")
        self.out_dir = Path(out_dir)
        self.profile = profile

    def verify(self) -> VerificationResult:
        """Run every check of the profile."""
        logger.info(f"Verifying {self.out_dir} with the {self.profile} profile")
        result = VerificationResult(success=False, profile=self.profile)
        if self.profile == 'paper':
            self._verify_reference(result)
        else:
            self._verify_regenerated(result)

        result.success = not (result.missing_files or result.mismatches or result.failed_checks)
        result.summary = self._summarize(result)
        logger.info(f"Verification complete: {result.summary}")
        return result

    def _summarize(self, result: VerificationResult) -> str:
        if result.success:
            return f"All {result.checked} cells match ({self.profile} profile)"
        if result.missing_files:
            return f"missing file: {result.missing_files[0]}"
        if result.mismatches:
            return result.mismatches[0].describe()
        return result.failed_checks[0]

    # paper profile

    def _verify_reference(self, result: VerificationResult) -> None:
        for table in EXPECTED_TABLES:
            path = self.out_dir / table.filename
            if not path.exists():
                result.missing_files.append(table.filename)
                continue
            header, rows = read_rows(path)
            result.comparisons.extend(self._compare_reference(table, header, rows))

        fig9 = self.out_dir / 'fig9.csv'
        if fig9.exists():
            result.failed_checks.extend(self._check_cascade(*read_rows(fig9)))
        else:
            result.missing_files.append('fig9.csv')

        table3 = self.out_dir / 'table3.csv'
        if table3.exists():
            result.failed_checks.extend(self._check_exceed_order(*read_rows(table3)))

    def _compare_reference(
        self,
        table: ExpectedTable,
        header: List[str],
        rows: List[List[str]],
    ) -> List[CellComparison]:
        positions = {name: index for index, name in enumerate(header)}
        indexed: Dict[Tuple[str, ...], List[str]] = {}
        if all(column in positions for column in table.key_columns):
            for row in rows:
                key = tuple(row[positions[c]] if positions[c] < len(row) else '' for c in table.key_columns)
                indexed[key] = row

        comparisons = []
        for key, cells in table.rows.items():
            label = _row_label(table.key_columns, key)
            row = indexed.get(key)
            for column, expected in cells.items():
                if row is None:
                    actual = '<missing row>'
                elif column not in positions or positions[column] >= len(row):
                    actual = '<missing column>'
                else:
                    actual = row[positions[column]]
                match = row is not None and not actual.startswith('<missing') and cell_matches(expected, actual)
                comparisons.append(CellComparison(table.filename, label, column,
                                                  expected.value, actual, match))
                if not match:
                    logger.debug(f"Mismatch in {table.filename} row {label} column {column}")
        return comparisons

    def _check_cascade(self, header: List[str], rows: List[List[str]]) -> List[str]:
        try:
            points = {
                (int(row[header.index('L')]), float(row[header.index('shock')])):
                    (int(row[header.index('cascade_depth')]), float(row[header.index('aggregate_loss')]))
                for row in rows
            }
        except (ValueError, IndexError):
            return ["fig9.csv: unreadable cascade rows"]

        failures = []
        small, large = points.get((10, 0.3)), points.get((50, 0.3))
        if small is not None and large is not None:
            if not (small[0] < large[0] and small[1] < large[1]):
                failures.append(f"fig9.csv: L=10 cascade {small} is not below L=50 cascade {large} at p=0.3")

        for limit in sorted({limit for limit, _ in points}):
            losses = [points[key][1] for key in sorted(points) if key[0] == limit]
            if any(later < earlier for earlier, later in zip(losses, losses[1:])):
                failures.append(f"fig9.csv: loss for L={limit} decreases as the shock grows")
        return failures

    def _check_exceed_order(self, header: List[str], rows: List[List[str]]) -> List[str]:
        by_name = {row[0]: row[1:] for row in rows if row}
        if not all(name in by_name for name in EXCEED_ORDER):
            return []
        failures = []
        for index, column in enumerate(header[1:]):
            try:
                values = [float(by_name[name][index]) for name in EXCEED_ORDER]
            except (ValueError, IndexError):
                return [f"table3.csv: unreadable column {column}"]
            if any(later > earlier for earlier, later in zip(values, values[1:])):
                failures.append(f"table3.csv: collections out of order at {column}: {values}")
        return failures

    # strict profile

    def _verify_regenerated(self, result: VerificationResult) -> None:
        try:
            manifest = read_manifest(self.out_dir)
        except ManifestError as e:
            if not (self.out_dir / MANIFEST_NAME).exists():
                result.missing_files.append(MANIFEST_NAME)
            else:
                result.failed_checks.append(str(e))
            return

        scenario = ScenarioConfig.from_dict(manifest.config)
        tables = ExperimentRunner(scenario).produce(manifest.subcommand)
        for table in tables:
            path = self.out_dir / table.filename
            if not path.exists():
                result.missing_files.append(table.filename)
                continue
            result.comparisons.extend(self._compare_exact(table, *read_rows(path)))
            recorded = manifest.checksums.get(table.filename)
            if recorded is not None and recorded != sha256_file(path):
                result.failed_checks.append(f"{table.filename}: checksum differs from manifest")

    def _compare_exact(
        self,
        table: Table,
        header: List[str],
        rows: List[List[str]],
    ) -> List[CellComparison]:
        comparisons = []
        for index, column in enumerate(table.header):
            actual = header[index] if index < len(header) else '<missing column>'
            comparisons.append(CellComparison(table.filename, 'header', str(index), column,
                                              actual, actual == column))
        for number, expected_row in enumerate(table.rows, start=1):
            actual_row: Optional[List[str]] = rows[number - 1] if number <= len(rows) else None
            for index, expected in enumerate(expected_row):
                if actual_row is None:
                    actual = '<missing row>'
                elif index >= len(actual_row):
                    actual = '<missing column>'
                else:
                    actual = actual_row[index]
                comparisons.append(CellComparison(table.filename, str(number), table.header[index],
                                                  expected, actual, actual == expected))
        for number in range(len(table.rows) + 1, len(rows) + 1):
            comparisons.append(CellComparison(table.filename, str(number), '*', '<no row>',
                                              ",".join(rows[number - 1]), False))
        return comparisons


def verify_outputs(out_dir: Path, profile: str = 'paper') -> VerificationResult:
    """Convenience wrapper around OutputVerifier."""
    return OutputVerifier(out_dir, profile).verify()
