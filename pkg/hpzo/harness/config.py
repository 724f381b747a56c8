"""
hpzo Experiment Configuration
Schema for Monte Carlo experiment files (YAML). Unknown keys are rejected.
"""

import logging
from typing import Any, Dict, List, Literal, Optional

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from ..config import settings
from ..core.oracles import Regime
from ..errors import InvalidInputError

logger = logging.getLogger(__name__)


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class ProblemConfig(_Strict):
    name: str
    params: Dict[str, Any] = Field(default_factory=dict)


class OverridesConfig(_Strict):
    T: Optional[int] = Field(default=None, ge=1)
    alpha: Optional[float] = Field(default=None, gt=0)


class OutputConfig(_Strict):
    directory: Optional[str] = None
    formats: List[Literal["json", "csv"]] = Field(default_factory=lambda: ["json"])
    write: bool = True


class ExperimentConfig(_Strict):
    """One Monte Carlo experiment: problem, regime, accuracy targets and trial layout."""

    problem: ProblemConfig
    regime: Regime
    epsilon: float = Field(gt=0)
    delta: float = Field(gt=0, lt=1)
    trials: int = Field(ge=1)
    master_seed: int = 0
    overrides: Optional[OverridesConfig] = None
    parallelism: int = Field(default_factory=lambda: settings.default_parallelism, ge=1)
    L_used: Optional[float] = Field(default=None, gt=0)
    level_radius: Optional[float] = Field(default=None, ge=0)
    check_pathwise: bool = True
    output: OutputConfig = Field(default_factory=OutputConfig)

    @field_validator("regime", mode="before")
    @classmethod
    def _parse_regime(cls, value):
        return Regime.parse(value)

    @model_validator(mode="after")
    def _overrides_not_empty(self):
        if self.overrides is not None and self.overrides.T is None and self.overrides.alpha is None:
            raise ValueError("overrides must set T, alpha, or both")
        return self


def load_experiment_config(path: str) -> ExperimentConfig:
    """Reads and validates an experiment file."""
    try:
        with open(path, "r") as f:
            raw = yaml.safe_load(f) or {}
    except OSError as e:
        raise InvalidInputError(f"Cannot read experiment config {path}: {e}") from e
    except yaml.YAMLError as e:
        raise InvalidInputError(f"Experiment config {path} is not valid YAML: {e}") from e

    try:
        config = ExperimentConfig.model_validate(raw)
    except ValidationError as e:
        raise InvalidInputError(f"Experiment config {path} is invalid:\n{e}") from e
    logger.info(f"Loaded experiment config {path}: problem={config.problem.name}, regime={config.regime.value}")
    return config
