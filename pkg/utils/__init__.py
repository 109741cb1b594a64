"""Utility modules shared by the counted-transfer experiments."""

from utils.tables import (
    fmt_fixed,
    fmt_optional,
    read_csv,
    read_rows,
    sha256_file,
    write_csv,
)

__all__ = [
    'fmt_fixed',
    'fmt_optional',
    'read_csv',
    'read_rows',
    'sha256_file',
    'write_csv',
]
