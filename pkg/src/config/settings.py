"""Settings and configuration management."""

import logging
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

from src.models.errors import InvalidSettings
from src.oracle.guard import SizeGuard

logger = logging.getLogger(__name__)

POSITIVE = (
    "max_patients",
    "max_categories_profiles",
    "max_categories_matchings",
    "max_units",
    "max_profiles",
    "random_instances",
    "random_max_patients",
    "random_max_categories",
    "random_max_units",
    "precedence_max_categories",
    "baseline_max_categories",
)
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")
OUTPUT_FORMATS = ("json", "text")


@dataclass
class Settings:
    """Engine settings: defaults in code, overridden by a YAML file."""

    # Size guards of the exhaustive procedures
    max_patients: int = 6
    max_categories_profiles: int = 3
    max_categories_matchings: int = 6
    max_units: int = 6
    max_profiles: int = 1_000_000

    # Random verification runs
    random_instances: int = 200
    random_max_patients: int = 6
    random_max_categories: int = 3
    random_max_units: int = 6
    precedence_max_categories: int = 4
    baseline_max_categories: int = 5

    # Output
    log_level: str = "WARNING"
    output_format: str = "json"

    def __post_init__(self) -> None:
        self.validate()

    @classmethod
    def load(cls, config_path: Optional[Path] = None) -> "Settings":
        """Defaults, then the keys of ``config_path`` when it exists."""
        settings = cls()
        if config_path and Path(config_path).exists():
            try:
                with open(config_path, "r", encoding="utf-8") as f:
                    config_data = yaml.safe_load(f) or {}
            except yaml.YAMLError as e:
                raise InvalidSettings(f"{config_path}: {e}") from e
            if not isinstance(config_data, dict):
                raise InvalidSettings(f"{config_path}: expected a mapping of settings")
            settings.update(config_data)
        return settings

    def update(self, values: Dict[str, Any]) -> None:
        known = {f.name: f.type for f in fields(self)}
        for key, value in values.items():
            if key not in known:
                logger.warning("Ignoring unknown setting %r", key)
                continue
            try:
                setattr(self, key, known[key](value))
            except (TypeError, ValueError) as e:
                raise InvalidSettings(f"setting {key!r}: cannot convert {value!r}") from e
        self.validate()

    def validate(self) -> None:
        for name in POSITIVE:
            if getattr(self, name) < 1:
                raise InvalidSettings(f"setting {name!r} must be at least 1, got {getattr(self, name)}")
        # Random instances give every category at least one unit.
        widest = max(self.random_max_categories, self.precedence_max_categories, self.baseline_max_categories)
        if self.random_max_units < widest:
            raise InvalidSettings(
                f"random_max_units ({self.random_max_units}) cannot cover {widest} categories"
            )
        self.log_level = self.log_level.upper()
        if self.log_level not in LOG_LEVELS:
            raise InvalidSettings(f"unknown log level {self.log_level!r}")
        if self.output_format not in OUTPUT_FORMATS:
            raise InvalidSettings(f"unknown output format {self.output_format!r}")

    def size_guard(self, for_profiles: bool = False) -> SizeGuard:
        return SizeGuard(
            max_patients=self.max_patients,
            max_categories=self.max_categories_profiles if for_profiles else self.max_categories_matchings,
            max_units=self.max_units,
            max_profiles=self.max_profiles,
        )

    def to_dict(self) -> Dict[str, Any]:
        """Convert settings to dictionary."""
        return {f.name: getattr(self, f.name) for f in fields(self)}
