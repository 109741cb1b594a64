"""Published reference values the ``paper`` verification profile compares against.

Values are kept exactly as printed. A cell is accepted within its column
tolerance or within half a unit of its printed precision, whichever is
larger.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from popgen.profiles import TABLE2_TARGETS


@dataclass(frozen=True)
class ExpectedCell:
    """One printed value.

    Attributes:
        value: The value as printed.
        tolerance: Allowed absolute deviation, or fraction of the value when relative.
        relative: Whether ``tolerance`` is relative.
    """
    value: str
    tolerance: float = 0.0
    relative: bool = False


@dataclass(frozen=True)
class ExpectedTable:
    """Printed cells of one output file, keyed by the values of its key columns."""
    filename: str
    key_columns: Tuple[str, ...]
    rows: Dict[Tuple[str, ...], Dict[str, ExpectedCell]] = field(default_factory=dict)


def _table(
    filename: str,
    key_columns: Sequence[str],
    columns: Sequence[str],
    data: Sequence[Sequence[str]],
    tolerances: Optional[Mapping[str, float]] = None,
    relative: Sequence[str] = (),
) -> ExpectedTable:
    tolerances = tolerances or {}
    width = len(key_columns)
    rows = {}
    for entry in data:
        key = tuple(entry[:width])
        rows[key] = {
            column: ExpectedCell(value, tolerances.get(column, 0.0), column in relative)
            for column, value in zip(columns, entry[width:])
        }
    return ExpectedTable(filename, tuple(key_columns), rows)


_CAPS = ('L=3', 'L=5', 'L=10', 'L=20', 'L=50', 'L=100')

TABLE2 = _table(
    'table2.csv', ['collection'], ['median', 'p90'],
    [(name, str(t.median), str(t.p90)) for name, t in TABLE2_TARGETS.items()],
    tolerances={'p90': 0.30},
    relative=['p90'],
)

TABLE3 = _table(
    'table3.csv', ['collection'], _CAPS,
    [
        ('PFP', '24.1', '16.0', '8.8', '4.4', '1.7', '0.9'),
        ('Art', '13.1', '7.0', '2.9', '1.2', '0.3', '0.1'),
        ('Gaming', '32.4', '23.3', '14.2', '8.5', '4.3', '2.5'),
        ('Memberships', '6.0', '2.6', '0.8', '0.2', '0.0', '0.0'),
        ('Metaverse', '18.8', '11.7', '5.5', '2.5', '1.0', '0.4'),
    ],
    tolerances={cap: 5.0 for cap in _CAPS},
)

TABLE4 = _table(
    'table4.csv', ['remaining'], ['ratio', 'Linear', 'Concave', 'Convex', 'Threshold'],
    [
        ('20', '1.00', '10.00', '10.00', '10.00', '10.00'),
        ('18', '0.90', '9.00', '9.49', '8.10', '8.75'),
        ('15', '0.75', '7.50', '8.66', '5.63', '6.88'),
        ('10', '0.50', '5.00', '7.07', '2.50', '3.75'),
        ('5', '0.25', '2.50', '5.00', '0.63', '0.63'),
        ('2', '0.10', '1.00', '3.16', '0.10', '0.50'),
        ('0', '0.00', '0.00', '0.00', '0.00', '0.50'),
    ],
    tolerances={'Linear': 0.01, 'Concave': 0.01, 'Convex': 0.01, 'Threshold': 0.01},
)

TABLE5 = _table(
    'table5.csv', ['stage'], ['L=5', 'L=10', 'L=20', 'L=50'],
    [
        ('First transfer', '10.6', '5.1', '2.5', '1.0'),
        ('Mid-point', '14.2', '10.1', '7.1', '4.5'),
        ('Last transfer', '44.7', '31.6', '22.4', '14.1'),
    ],
    tolerances={'L=5': 0.1, 'L=10': 0.1, 'L=20': 0.1, 'L=50': 0.1},
)

TABLE6 = _table(
    'table6.csv', ['L', 'n'], ['profit_nocap', 'fair_value', 'max_sell', 'profit_cap', 'deterred'],
    [
        ('5', '1', '3.00', '8.94', '11.63', '1.62', 'No'),
        ('5', '3', '2.99', '6.33', '8.22', '-1.79', 'Yes'),
        ('5', '5', '2.98', '0.00', '0.00', '-10.0', 'Yes'),
        ('10', '3', '2.99', '8.37', '10.88', '0.86', 'No'),
        ('10', '5', '2.98', '7.07', '9.19', '-0.83', 'Yes'),
        ('10', '10', '2.95', '0.00', '0.00', '-10.1', 'Yes'),
        ('20', '5', '2.98', '8.66', '11.26', '1.23', 'No'),
        ('20', '9', '2.96', '7.42', '9.64', '-0.41', 'Yes'),
        ('20', '15', '2.93', '5.00', '6.50', '-3.58', 'Yes'),
    ],
    tolerances={'profit_nocap': 0.01, 'fair_value': 0.01, 'max_sell': 0.01, 'profit_cap': 0.01},
)

BREAK_EVEN = _table(
    'fig6b.csv', ['L'], ['break_even'],
    [('5', '3'), ('10', '5')],
)

TABLE7 = _table(
    'table7.csv', ['L'], ['max_depth', 'exposure', 'leverage', 'reduction_pct'],
    [
        ('4', '2', '21.90', '2.19', '34.2'),
        ('6', '3', '25.33', '2.53', '24.0'),
        ('10', '5', '29.41', '2.94', '11.7'),
        ('20', '10', '32.67', '3.27', '1.9'),
        ('50', '25', '33.33', '3.33', '0.0'),
    ],
    tolerances={'exposure': 0.01, 'leverage': 0.01, 'reduction_pct': 0.1},
)

TABLE8 = _table(
    'table8.csv', ['operation'], ['erc721', 'erc7634', 'overhead_pct'],
    [
        ('Mint', '51316', '51316', '0.0'),
        ('Mint + setLimit', '--', '74812', 'N/A'),
        ('Transfer (first)', '48947', '54283', '10.9'),
        ('Transfer (near cap)', '48947', '54471', '11.3'),
        ('Approve + transfer', '73221', '78557', '7.3'),
        ('setTransferLimit', '--', '23496', 'N/A'),
    ],
)

TABLE9 = _table(
    'table9.csv', ['use_case'], ['ERC-721', 'ERC-5192', 'ERC-6982', 'ERC-7634'],
    [
        ('Identity', '1', '5', '2', '3'),
        ('DeFi collateral', '5', '0', '4', '4'),
        ('RWA', '3', '1', '3', '4'),
        ('Loyalty', '3', '4', '3', '4'),
        ('Digital art', '5', '0', '3', '4'),
        ('Gaming items', '3', '0', '3', '5'),
        ('Event tickets', '1', '3', '3', '5'),
        ('Memberships', '2', '4', '3', '5'),
    ],
)

TABLE10 = _table(
    'table10.csv', ['path'], ['companion', 'trigger', 'use_case'],
    [
        ('Soulbound', 'ERC-5192', 'k = L', 'Credentials/ID-binding.'),
        ('Auto-burn', 'ERC-5679', 'k = L', 'One-time consumables.'),
        ('Lock-release', 'ERC-6982', 'k = L+oracle', 'Subscriptions.'),
        ('Provenance', '---', 'k = L', 'Collectibles and arts.'),
    ],
)

MITIGATIONS = _table(
    'fig10b.csv', ['mitigation'], ['extra_gas', 'bypass_resistance_pct', 'composability_pct'],
    [
        ('Recipient allowlist', '8200', 'Unspecified', 'Unspecified'),
        ('Soulbound wrapper detection', '12400', 'Unspecified', 'Unspecified'),
        ('ERC-6982 lockable integration', '15600', '85', '55'),
        ('Transfer cooldown period', '5100', 'Unspecified', 'Unspecified'),
        ('No mitigation (baseline)', '0', 'Unspecified', 'Unspecified'),
    ],
)

SECURITY = _table(
    'security.csv', ['metric'], ['value'],
    [('break_even_transfers', '221'), ('deploy_usd', '40')],
)

EXPECTED_TABLES: List[ExpectedTable] = [
    TABLE2, TABLE3, TABLE4, TABLE5, TABLE6, BREAK_EVEN, TABLE7,
    TABLE8, TABLE9, TABLE10, MITIGATIONS, SECURITY,
]

# Collections by decreasing share of tokens above any cap.
EXCEED_ORDER: Tuple[str, ...] = ('Gaming', 'PFP', 'Metaverse', 'Art', 'Memberships')
