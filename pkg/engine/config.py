from pathlib import Path
from typing import List, Optional, Union
import logging

import yaml
from pydantic import BaseModel, Field, field_validator

from engine.linalg import parse_rational

logger = logging.getLogger(__name__)

SETTINGS_FILE = Path("config/verify.yaml")
MANIFEST_FILE = Path("config/properties.yaml")


class VerifySettings(BaseModel):
    max_n: int = Field(6, ge=2, description="Largest order of the exhaustive universe")
    seed: int = Field(20240501, ge=0, description="Base seed for every sampled suite")
    counterexample_cap: int = Field(10, ge=1, description="Counterexamples kept per property")
    jobs: int = Field(1, ge=1, description="Worker processes")
    switching_subsets: int = Field(200, ge=1, description="Random switching sets tried per graph")
    switching_max_order: int = Field(8, ge=1)
    lambdas: List[str] = Field(
        default_factory=lambda: ["0", "1", "-1", "2", "-2", "1/2"],
        description="Rational test points for the multiplicity bounds",
    )
    suite_samples: int = Field(200, ge=1, description="Instances per composed-graph suite")
    reduction_samples: int = Field(500, ge=1)
    reduction_max_order: int = Field(12, ge=2)
    form1_samples: int = Field(100, ge=1)
    form1_max_order: int = Field(30, ge=12, description="Order limit of the leaf-free instances")
    form1_sufficiency_order: int = Field(20, ge=12)
    path_max_order: int = Field(16, ge=1)
    cycle_max_order: int = Field(16, ge=3)
    tree_max_order: int = Field(10, ge=2)
    recursion_max_order: int = Field(12, ge=3)
    coverage_max_order: int = Field(5, ge=2, description="Order limit for the all-signings comparison")
    bicyclic_max_order: int = Field(10, ge=5)

    @field_validator("lambdas")
    @classmethod
    def _check_lambdas(cls, values: List[str]) -> List[str]:
        for value in values:
            parse_rational(value)
        return values


def load_settings(path: Optional[Union[str, Path]] = None) -> VerifySettings:
    """Read harness settings from YAML; a missing file gives the defaults."""
    path = Path(path) if path is not None else SETTINGS_FILE
    if not path.exists():
        logger.warning(f"Settings file {path} not found, using defaults")
        return VerifySettings()
    with open(path, "r", encoding="utf-8") as f:
        data = yaml.safe_load(f) or {}
    if not isinstance(data, dict):
        raise ValueError(f"{path} must hold a mapping of settings")
    settings = VerifySettings(**data.get("verify", data))
    logger.info(f"Loaded settings from {path}")
    return settings


def load_manifest(path: Optional[Union[str, Path]] = None) -> List[str]:
    path = Path(path) if path is not None else MANIFEST_FILE
    with open(path, "r", encoding="utf-8") as f:
        data = yaml.safe_load(f) or {}
    return [entry["name"] if isinstance(entry, dict) else str(entry) for entry in data.get("properties", [])]
