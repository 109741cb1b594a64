"""Experiment runner, run manifests and output verification."""

from experiments.errors import (
    ExperimentError,
    InvariantViolationError,
    ManifestError,
    ScenarioError,
    UnknownSubcommandError,
    VerificationError,
)
from experiments.manifest import ARTIFACT_VERSION, RunManifest, read_manifest, write_manifest
from experiments.runner import ALL, SUBCOMMANDS, ExperimentRunner, RunResult, Table
from experiments.scenario import ScenarioConfig, load_scenario
from experiments.verifier import OutputVerifier, VerificationResult, verify_outputs

__version__ = ARTIFACT_VERSION

__all__ = [
    'ScenarioConfig',
    'load_scenario',
    'ExperimentRunner',
    'RunResult',
    'Table',
    'SUBCOMMANDS',
    'ALL',
    'RunManifest',
    'read_manifest',
    'write_manifest',
    'OutputVerifier',
    'VerificationResult',
    'verify_outputs',
    'ExperimentError',
    'ScenarioError',
    'ManifestError',
    'UnknownSubcommandError',
    'InvariantViolationError',
    'VerificationError',
]
