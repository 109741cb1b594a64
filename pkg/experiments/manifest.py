"""Run manifest: what produced an output directory and how to reproduce it."""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

from experiments.errors import ManifestError

logger = logging.getLogger(__name__)

MANIFEST_NAME = 'manifest.yaml'
ARTIFACT_VERSION = '0.1.0'


@dataclass
class RunManifest:
    """Line-oriented record written next to the CSV outputs.

    Attributes:
        subcommand: Experiment that produced the outputs.
        config: Full scenario configuration echo.
        seed: Seed of the run.
        generator: Random generator of the population sampler.
        version: Package version.
        eth_price_usd: ETH price used for dollar figures.
        checksums: Output file name -> SHA-256 hex digest.
    """
    subcommand: str
    config: Dict[str, Any]
    seed: int
    generator: str
    version: str
    eth_price_usd: float
    checksums: Dict[str, str] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'subcommand': self.subcommand,
            'config': self.config,
            'seed': self.seed,
            'generator': self.generator,
            'version': self.version,
            'eth_price_usd': self.eth_price_usd,
            'checksums': dict(sorted(self.checksums.items())),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'RunManifest':
        """Create a RunManifest from a dictionary.

        Raises:
            ManifestError: If a field is missing or mistyped.
        """
        try:
            manifest = cls(
                subcommand=str(data['subcommand']),
                config=dict(data['config']),
                seed=int(data['seed']),
                generator=str(data['generator']),
                version=str(data['version']),
                eth_price_usd=float(data['eth_price_usd']),
                checksums={str(k): str(v) for k, v in dict(data['checksums']).items()},
            )
        except (KeyError, TypeError, ValueError) as e:
            raise ManifestError(f"Invalid manifest: {e}") from e
        return manifest


def write_manifest(out_dir: Path, manifest: RunManifest) -> Path:
    """Write ``manifest.yaml`` into ``out_dir`` with sorted keys."""
    path = Path(out_dir) / MANIFEST_NAME
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='utf-8', newline='\n') as f:
        yaml.safe_dump(manifest.to_dict(), f, sort_keys=True, default_flow_style=False)
    logger.info(f"Manifest written to {path}")
    return path


def read_manifest(out_dir: Path) -> RunManifest:
    """Load ``manifest.yaml`` from ``out_dir``.

    Raises:
        ManifestError: If the manifest is missing or malformed.
    """
    path = Path(out_dir) / MANIFEST_NAME
    if not path.exists():
        raise ManifestError(f"missing file: {path}")
    try:
        with open(path, 'r', encoding='utf-8') as f:
            data: Optional[Any] = yaml.safe_load(f)
    except yaml.YAMLError as e:
        raise ManifestError(f"Invalid YAML in {path}: {e}") from e
    if not isinstance(data, dict):
        raise ManifestError(f"Manifest must contain a mapping: {path}")
    return RunManifest.from_dict(data)
