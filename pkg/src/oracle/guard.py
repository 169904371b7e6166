"""Size limits for exhaustive procedures."""

import math
from dataclasses import dataclass
from typing import Iterable

from src.models.errors import InstanceTooLarge
from src.models.reserve import Instance


@dataclass(frozen=True)
class SizeGuard:
    """Bounds beyond which brute-force enumeration refuses to run."""

    max_patients: int = 6
    max_categories: int = 6
    max_units: int = 6
    max_profiles: int = 1_000_000

    def __post_init__(self) -> None:
        for name in ("max_patients", "max_categories", "max_units", "max_profiles"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")

    def check(self, instance: Instance) -> None:
        if len(instance.patients) > self.max_patients:
            raise InstanceTooLarge(
                f"{len(instance.patients)} patients exceed the guard of {self.max_patients}"
            )
        if len(instance.categories) > self.max_categories:
            raise InstanceTooLarge(
                f"{len(instance.categories)} categories exceed the guard of {self.max_categories}"
            )
        if instance.total_units > self.max_units:
            raise InstanceTooLarge(
                f"{instance.total_units} units exceed the guard of {self.max_units}"
            )

    def check_profiles(self, choice_counts: Iterable[int]) -> int:
        """Number of preference profiles; raises when above ``max_profiles``."""
        total = math.prod(math.factorial(k) for k in choice_counts)
        if total > self.max_profiles:
            raise InstanceTooLarge(f"{total} preference profiles exceed the guard of {self.max_profiles}")
        return total


PROFILE_GUARD = SizeGuard(max_patients=6, max_categories=3, max_units=6)
MATCHING_GUARD = SizeGuard(max_patients=6, max_categories=6, max_units=6)
