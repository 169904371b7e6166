"""Reserve systems induced by a baseline priority order."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import FrozenSet, Mapping, Tuple

from src.models.errors import InvalidBaseline, InvalidSmartConfig
from src.models.reserve import CategoryId, PatientId


class ReserveMode(str, Enum):
    """Whether non-beneficiaries may receive preferential-category units."""

    SOFT = "soft"
    HARD = "hard"


@dataclass(frozen=True)
class BaselineInstance:
    """Baseline priority order, one unreserved category and preferential categories.

    ``beneficiaries`` maps every preferential category, in declaration order, to its
    beneficiary set; the unreserved category implicitly has every patient as beneficiary.
    """

    baseline: Tuple[PatientId, ...]
    unreserved: CategoryId
    beneficiaries: Mapping[CategoryId, FrozenSet[PatientId]]
    capacity: Mapping[CategoryId, int]
    mode: ReserveMode = ReserveMode.SOFT

    def __post_init__(self) -> None:
        object.__setattr__(self, "baseline", tuple(self.baseline))
        object.__setattr__(
            self,
            "beneficiaries",
            {c: frozenset(members) for c, members in self.beneficiaries.items()},
        )
        object.__setattr__(self, "capacity", dict(self.capacity))
        object.__setattr__(self, "mode", ReserveMode(self.mode))

    @property
    def preferential(self) -> Tuple[CategoryId, ...]:
        return tuple(self.beneficiaries)

    @property
    def categories(self) -> Tuple[CategoryId, ...]:
        """Preferential categories in declaration order, then the unreserved category."""
        return self.preferential + (self.unreserved,)

    @property
    def total_units(self) -> int:
        return sum(self.capacity[c] for c in self.categories)

    @property
    def unreserved_capacity(self) -> int:
        return self.capacity[self.unreserved]

    @property
    def general_community(self) -> FrozenSet[PatientId]:
        """Patients who benefit from the unreserved category only."""
        covered = set().union(*self.beneficiaries.values()) if self.beneficiaries else set()
        return frozenset(p for p in self.baseline if p not in covered)

    def beneficiary_categories(self, patient: PatientId) -> Tuple[CategoryId, ...]:
        """Preferential categories the patient is a beneficiary of, in declaration order."""
        return tuple(c for c, members in self.beneficiaries.items() if patient in members)

    def is_beneficiary(self, patient: PatientId, category: CategoryId) -> bool:
        if category == self.unreserved:
            return True
        return patient in self.beneficiaries.get(category, frozenset())

    def has_disjoint_beneficiaries(self) -> bool:
        """Each patient benefits from at most one preferential category."""
        return all(len(self.beneficiary_categories(p)) <= 1 for p in self.baseline)

    def validate(self) -> "BaselineInstance":
        if len(set(self.baseline)) != len(self.baseline):
            raise InvalidBaseline("baseline order repeats a patient")
        if self.unreserved in self.beneficiaries:
            raise InvalidBaseline(f"unreserved category {self.unreserved!r} listed as preferential")
        patients = set(self.baseline)
        for category, members in self.beneficiaries.items():
            unknown = members - patients
            if unknown:
                raise InvalidBaseline(
                    f"beneficiaries of {category!r} not in baseline: {sorted(map(str, unknown))}"
                )
        for category in self.categories:
            if category not in self.capacity:
                raise InvalidBaseline(f"missing capacity for {category!r}")
            if self.capacity[category] < 0:
                raise InvalidBaseline(f"negative capacity for {category!r}")
        extra = set(self.capacity) - set(self.categories)
        if extra:
            raise InvalidBaseline(f"capacity given for undeclared categories: {sorted(map(str, extra))}")
        return self


@dataclass(frozen=True)
class SmartConfig:
    """Number of unreserved units processed before the preferential categories."""

    n: int = 0

    def validate(self, instance: BaselineInstance) -> "SmartConfig":
        if not 0 <= self.n <= instance.unreserved_capacity:
            raise InvalidSmartConfig(
                f"n={self.n} outside [0, {instance.unreserved_capacity}]"
            )
        return self
