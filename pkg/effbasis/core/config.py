"""
Application configuration — process-wide settings from environment variables
plus the loader for declarative experiment documents.
"""

from pathlib import Path

import yaml
from pydantic import Field, ValidationError
from pydantic_settings import BaseSettings, SettingsConfigDict

from effbasis.core.errors import ConfigError
from effbasis.models.experiment import ExperimentConfig


class Settings(BaseSettings):
    """Settings loaded from .env / environment."""

    model_config = SettingsConfigDict(
        env_file=".env",
        case_sensitive=True,
        env_parse_none_str="",
    )

    # ── Logging ─────────────────────────────────────────
    LOG_LEVEL: str = "INFO"
    LOG_JSON: bool = False

    # ── Numerics ────────────────────────────────────────
    MAX_DENSE_QUBITS: int = Field(
        default=16,
        description="Largest register the dense statevector/FCI code accepts",
    )
    JW_DROP_TOLERANCE: float = 1e-12
    AMPLITUDE_THRESHOLD: float = 1e-6
    OVERLAP_THRESHOLD: float = 1e-8

    # ── Experiments ─────────────────────────────────────
    REFERENCE_FILE: str = "reference.json"


settings = Settings()


def load_experiment_config(path: str | Path) -> ExperimentConfig:
    """Load and validate an experiment document (JSON, or YAML).

    Raises:
        ConfigError: file missing, unparsable, or failing validation. The
            message lists every offending field path.
    """
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"Config file not found: {path}")
    try:
        with path.open() as f:
            raw = yaml.safe_load(f) or {}
    except yaml.YAMLError as e:
        raise ConfigError(f"Could not parse {path}: {e}") from e

    try:
        config = ExperimentConfig.model_validate(raw)
    except ValidationError as e:
        fields = "; ".join(
            f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}"
            for err in e.errors()
        )
        raise ConfigError(f"Invalid config {path}: {fields}") from e

    config = config.resolve_paths(path.parent)
    missing = [str(p) for p in config.systems if not p.exists()]
    if missing:
        raise ConfigError(f"Invalid config {path}: fixtures not found: {', '.join(missing)}")
    return config
