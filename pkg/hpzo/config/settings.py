"""
hpzo Configuration Management
Consolidated configuration loading from settings.yml, with environment overrides.
"""

import os
from functools import lru_cache
from typing import Any, Dict, Optional

import yaml
from pydantic_settings import BaseSettings, SettingsConfigDict


class EnvironmentOverrides(BaseSettings):
    """Values read from HPZO_* environment variables; they win over settings.yml."""

    model_config = SettingsConfigDict(env_prefix="HPZO_", extra="ignore")

    output_dir: Optional[str] = None
    log_level: Optional[str] = None
    settings_file: Optional[str] = None


class Settings:
    """Consolidated configuration for hpzo."""

    def __init__(self, config_path: str = None, overrides: EnvironmentOverrides = None):
        self._overrides = overrides if overrides is not None else EnvironmentOverrides()

        if config_path is None:
            config_path = self._overrides.settings_file
        if config_path is None:
            # Look for settings.yml in the same directory as this file
            current_dir = os.path.dirname(os.path.abspath(__file__))
            config_path = os.path.join(current_dir, "settings.yml")

        if not os.path.exists(config_path):
            raise FileNotFoundError(f"Configuration file not found at: {config_path}")

        with open(config_path, "r") as f:
            self._config = yaml.safe_load(f) or {}

    # --- Environment Configuration ---
    @property
    def environment(self) -> str:
        return self._config.get("environment", "development")

    @property
    def log_level(self) -> str:
        return self._overrides.log_level or self._config.get("log_level", "INFO")

    # --- Output Configuration ---
    @property
    def output_directory(self) -> str:
        return self._overrides.output_dir or self._config.get("output", {}).get("directory", "exports")

    @property
    def output_trajectory_filename(self) -> str:
        return self._config.get("output", {}).get(
            "trajectory_filename", "trajectory_{problem}_seed{seed}_stream{stream}.csv"
        )

    @property
    def output_summary_filename(self) -> str:
        return self._config.get("output", {}).get("summary_filename", "summary_{problem}_{regime}.json")

    # --- Optimizer Configuration ---
    @property
    def zero_gradient_threshold(self) -> float:
        return float(self._config.get("optimizer", {}).get("zero_gradient_threshold", 1e-14))

    @property
    def degenerate_norm_sq(self) -> float:
        return float(self._config.get("optimizer", {}).get("degenerate_norm_sq", 1e-300))

    # --- Harness Configuration ---
    @property
    def failed_run_tolerance(self) -> float:
        return float(self._config.get("harness", {}).get("failed_run_tolerance", 0.01))

    @property
    def sigma_margin(self) -> float:
        return float(self._config.get("harness", {}).get("sigma_margin", 3.0))

    @property
    def default_parallelism(self) -> int:
        return int(self._config.get("harness", {}).get("default_parallelism", 1))

    # --- Single Run Configuration ---
    @property
    def run_default_alpha(self) -> float:
        return float(self._config.get("run", {}).get("default_alpha", 1e-3))

    @property
    def run_default_seed(self) -> int:
        return int(self._config.get("run", {}).get("default_seed", 0))

    # --- Lemma Check Configuration ---
    @property
    def lemma_check(self) -> Dict[str, Any]:
        return self._config.get("lemma_check", {})

    @property
    def lemma_check_samples(self) -> int:
        return int(self.lemma_check.get("samples", 100_000))

    @property
    def lemma_check_seed(self) -> int:
        return int(self.lemma_check.get("seed", 20240601))


@lru_cache()
def get_settings() -> Settings:
    """Returns a cached instance of the Settings."""
    return Settings()


# Make settings easily accessible
settings = get_settings()
