"""Scenario configuration.

A scenario is the merge of ``config/default.yaml``, an optional user file
and command-line overrides, in increasing precedence. Every block is a
dataclass; unknown keys and mistyped values are rejected with the dotted
path of the offending key.
"""

import logging
from dataclasses import asdict, dataclass, field, fields, is_dataclass
from typing import Any, Dict, Mapping, Optional, Tuple

import yaml

from config import get_config_value, load_config, merge_config, set_config_value
from experiments.errors import ScenarioError
from market.wash import TABLE6_PAIRS
from popgen.profiles import COLLECTIONS, DEFAULT_CAPS

logger = logging.getLogger(__name__)

MAX_SEED = 2 ** 64 - 1


@dataclass(frozen=True)
class LedgerBlock:
    ops: int = 100_000
    tokens: int = 1_000
    shards: int = 1
    max_limit: int = 20
    unbounded_fraction: float = 0.2
    allow_unbounded_reset: bool = False
    liveness_max_value: int = 6


@dataclass(frozen=True)
class EconBlock:
    v_base: float = 10.0
    limit: int = 20
    concave_gamma: float = 0.5
    convex_gamma: float = 2.0
    threshold_tau: float = 0.2
    threshold_residual: float = 0.05
    limits: Tuple[int, ...] = (5, 10, 20, 50)


@dataclass(frozen=True)
class MarketBlock:
    v_base: float = 10.0
    alpha: float = 0.3
    g: float = 0.005
    pairs: Tuple[Tuple[int, int], ...] = TABLE6_PAIRS
    limits: Tuple[int, ...] = (5, 10, 15, 20, 50)


@dataclass(frozen=True)
class CreditBlock:
    ltv: float = 0.7
    v0: float = 10.0
    limits: Tuple[int, ...] = (4, 6, 10, 20, 50)
    value_floor: float = 0.01
    curve_depth: int = 25
    curve_max_limit: int = 50


@dataclass(frozen=True)
class CascadeBlock:
    ltv: float = 0.7
    v0: float = 10.0
    limits: Tuple[int, ...] = (10, 50)
    shocks: Tuple[float, ...] = (0.1, 0.2, 0.3, 0.4, 0.5)
    penalty: float = 0.05


@dataclass(frozen=True)
class PopgenBlock:
    n_tokens: int = 10_000
    x_max: int = 1000
    caps: Tuple[int, ...] = DEFAULT_CAPS
    alphas: Dict[str, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for name, alpha in self.alphas.items():
            if name not in COLLECTIONS:
                raise ScenarioError(f"unknown collection: popgen.alphas.{name}",
                                    key_path=f"popgen.alphas.{name}")
            if isinstance(alpha, bool) or not isinstance(alpha, (int, float)):
                raise ScenarioError(f"popgen.alphas.{name} must be a number, got {alpha!r}",
                                    key_path=f"popgen.alphas.{name}")


@dataclass(frozen=True)
class CostsBlock:
    gas: Dict[str, Any] = field(default_factory=dict)
    bypass: Dict[str, Any] = field(default_factory=dict)
    curve_max_n: int = 400


@dataclass(frozen=True)
class LoggingBlock:
    level: str = "INFO"
    format: str = "%(asctime)s %(levelname)s [%(name)s] %(message)s"


@dataclass(frozen=True)
class ScenarioConfig:
    """Complete parameter set of one run.

    Attributes:
        experiment: Name recorded in the manifest.
        seed: Unsigned 64-bit seed shared by every randomized experiment.
        output_dir: Directory outputs are written to.
    """
    experiment: str = "all"
    seed: int = 42
    output_dir: str = "results"
    ledger: LedgerBlock = field(default_factory=LedgerBlock)
    econ: EconBlock = field(default_factory=EconBlock)
    market: MarketBlock = field(default_factory=MarketBlock)
    credit: CreditBlock = field(default_factory=CreditBlock)
    cascade: CascadeBlock = field(default_factory=CascadeBlock)
    popgen: PopgenBlock = field(default_factory=PopgenBlock)
    costs: CostsBlock = field(default_factory=CostsBlock)
    logging: LoggingBlock = field(default_factory=LoggingBlock)

    def __post_init__(self) -> None:
        if not 0 <= self.seed <= MAX_SEED:
            raise ScenarioError(f"seed must be an unsigned 64-bit integer, got {self.seed}",
                                key_path="seed")

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> 'ScenarioConfig':
        """Create a ScenarioConfig from a (merged) configuration dictionary.

        Raises:
            ScenarioError: On an unknown key or a mistyped value.
        """
        return _build(cls, data, "")

    def to_dict(self) -> Dict[str, Any]:
        """Plain dictionary suitable for ``yaml.safe_dump``."""
        return _plain(asdict(self))


def _fail(path: str, expected: str, value: Any) -> ScenarioError:
    return ScenarioError(f"{path} must be {expected}, got {value!r}", key_path=path)


def _coerce(value: Any, default: Any, path: str, fixed_length: bool = False) -> Any:
    if is_dataclass(default):
        if not isinstance(value, Mapping):
            raise _fail(path, "a mapping", value)
        return _build(type(default), value, path)
    if isinstance(default, bool):
        if not isinstance(value, bool):
            raise _fail(path, "true or false", value)
        return value
    if isinstance(default, int):
        if isinstance(value, bool) or not isinstance(value, int):
            raise _fail(path, "an integer", value)
        return value
    if isinstance(default, float):
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise _fail(path, "a number", value)
        return float(value)
    if isinstance(default, str):
        if not isinstance(value, str):
            raise _fail(path, "a string", value)
        return value
    if isinstance(default, tuple):
        if not isinstance(value, (list, tuple)):
            raise _fail(path, "a list", value)
        if fixed_length and len(value) != len(default):
            raise _fail(path, f"a list of {len(default)} items", value)
        if not default:
            return tuple(value)
        nested = isinstance(default[0], tuple)
        return tuple(
            _coerce(item, default[0], f"{path}[{index}]", fixed_length=nested)
            for index, item in enumerate(value)
        )
    if isinstance(default, dict):
        if value is None:
            return {}
        if not isinstance(value, Mapping):
            raise _fail(path, "a mapping", value)
        return dict(value)
    return value


def _build(cls: Any, data: Mapping[str, Any], path: str) -> Any:
    template = cls()
    names = {f.name for f in fields(cls)}
    kwargs = {}
    for key, value in data.items():
        dotted = f"{path}.{key}" if path else str(key)
        if key not in names:
            raise ScenarioError(f"unknown key: {dotted}", key_path=dotted)
        kwargs[key] = _coerce(value, getattr(template, key), dotted)
    return cls(**kwargs)


def _plain(value: Any) -> Any:
    if isinstance(value, dict):
        return {key: _plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(item) for item in value]
    return value


def _manifest_config(data: Mapping[str, Any]) -> Optional[Dict[str, Any]]:
    """The configuration recorded in a run manifest, or None for a plain scenario."""
    recorded = get_config_value(data, 'config')
    if 'checksums' in data and isinstance(recorded, dict):
        return recorded
    return None


def load_scenario(
    config_path: Optional[str] = None,
    overrides: Optional[Mapping[str, Any]] = None,
) -> ScenarioConfig:
    """Load a scenario with flags > file > defaults precedence.

    Args:
        config_path: Scenario YAML, or a manifest.yaml from an earlier run.
        overrides: Dotted key -> value; None values are ignored.

    Returns:
        Validated ScenarioConfig.

    Raises:
        ScenarioError: If the file is missing, unparsable or invalid.
    """
    merged = load_config()
    if config_path:
        try:
            user = load_config(config_path)
        except FileNotFoundError as e:
            raise ScenarioError(str(e)) from e
        except yaml.YAMLError as e:
            raise ScenarioError(f"Invalid YAML in {config_path}: {e}") from e
        if not isinstance(user, dict):
            raise ScenarioError(f"Scenario file must contain a mapping: {config_path}")
        recorded = _manifest_config(user)
        if recorded is not None:
            logger.info(f"Using the configuration recorded in manifest {config_path}")
            user = recorded
        merged = merge_config(merged, user)

    for key_path, value in (overrides or {}).items():
        if value is not None:
            set_config_value(merged, key_path, value)

    scenario = ScenarioConfig.from_dict(merged)
    logger.debug(f"Scenario loaded: seed={scenario.seed} output_dir={scenario.output_dir}")
    return scenario
