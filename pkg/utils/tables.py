"""CSV table helpers shared by every experiment.

All experiment outputs are plain CSV files with a header row. Numbers are
formatted before they reach this module so that two runs with the same
configuration produce byte-identical files.
"""

import csv
import hashlib
import logging
import math
from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path
from typing import Any, Dict, Iterable, List, Sequence, Tuple

logger = logging.getLogger(__name__)


def fmt_fixed(value: float, decimals: int = 2) -> str:
    """Format a float at fixed precision, rounding halves away from zero.

    The shortest decimal representation of the float is rounded, so 2.995
    becomes "3.00" rather than the "2.99" that binary formatting gives.
    Negative zero ("-0.00") is normalised to "0.00".

    Args:
        value: Number to format.
        decimals: Digits after the decimal point.

    Returns:
        Formatted string.
    """
    if not math.isfinite(value):
        return str(value)
    quantum = Decimal(1).scaleb(-decimals)
    text = str(Decimal(repr(float(value))).quantize(quantum, rounding=ROUND_HALF_UP))
    if text.startswith('-') and Decimal(text) == 0:
        text = text[1:]
    return text


def fmt_optional(value: Any, decimals: int = 2, missing: str = "N/A") -> str:
    """Format a value that may be absent.

    Args:
        value: Number, string or None.
        decimals: Digits after the decimal point for floats.
        missing: Placeholder used for None.

    Returns:
        Formatted string.
    """
    if value is None:
        return missing
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return fmt_fixed(value, decimals)
    return str(value)


def write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
    """Write a CSV file with a header row.

    Args:
        path: Destination file. Parent directories are created.
        header: Column names.
        rows: Row values; non-string values are converted with ``str``.

    Returns:
        The path written.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)

    count = 0
    with open(path, 'w', encoding='utf-8', newline='') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(list(header))
        for row in rows:
            writer.writerow([cell if isinstance(cell, str) else str(cell) for cell in row])
            count += 1

    logger.debug(f"Wrote {count} rows to {path}")
    return path


def read_rows(path: Path) -> Tuple[List[str], List[List[str]]]:
    """Read a CSV file written by :func:`write_csv` as raw text cells.

    Args:
        path: File to read.

    Returns:
        The header and the data rows. Both are empty for an empty file.

    Raises:
        FileNotFoundError: If the file does not exist.
    """
    with open(path, 'r', encoding='utf-8', newline='') as f:
        rows = list(csv.reader(f))
    if not rows:
        return [], []
    return rows[0], rows[1:]


def read_csv(path: Path) -> List[Dict[str, str]]:
    """Read a CSV file as one dictionary per data row, keyed by header name."""
    header, rows = read_rows(path)
    return [dict(zip(header, row)) for row in rows]


def sha256_file(path: Path) -> str:
    """Compute the SHA-256 hex digest of a file."""
    digest = hashlib.sha256()
    with open(path, 'rb') as f:
        for chunk in iter(lambda: f.read(65536), b''):
            digest.update(chunk)
    return digest.hexdigest()
