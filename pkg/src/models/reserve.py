"""Core domain types: priority orders, instances, matchings, cutoffs, profiles and precedence."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import (
    Dict,
    FrozenSet,
    Hashable,
    Iterable,
    Iterator,
    Mapping,
    Optional,
    Sequence,
    Tuple,
    TypeVar,
    Union,
)

PatientId = Hashable
CategoryId = Hashable


class Sentinel(Enum):
    """The eligibility sentinel of priority orders, also used for an unmatched patient."""

    EMPTY = "∅"

    def __repr__(self) -> str:
        return "EMPTY"


EMPTY = Sentinel.EMPTY
UNMATCHED = EMPTY

# A patient or the sentinel: the value set of cutoffs and of priority positions.
Slot = Union[PatientId, Sentinel]
# A category or UNMATCHED: the value set of a matching.
Placement = Union[CategoryId, Sentinel]


@dataclass(frozen=True)
class PriorityOrder:
    """Strict order over patients and the sentinel.

    The first ``eligible_count`` entries of ``ranking`` sit above the sentinel and are the
    category's eligible patients; the rest sit below it.
    """

    ranking: Tuple[PatientId, ...]
    eligible_count: int
    _position: Dict[PatientId, int] = field(
        init=False, repr=False, compare=False, hash=False
    )

    def __post_init__(self) -> None:
        object.__setattr__(self, "ranking", tuple(self.ranking))
        object.__setattr__(
            self, "_position", {patient: k for k, patient in enumerate(self.ranking)}
        )

    @classmethod
    def from_sequence(cls, sequence: Iterable[Slot]) -> "PriorityOrder":
        """Build an order from a sequence that contains the sentinel exactly once."""
        items = list(sequence)
        if items.count(EMPTY) != 1:
            raise ValueError("sequence must contain the sentinel exactly once")
        cut = items.index(EMPTY)
        return cls(tuple(items[:cut] + items[cut + 1:]), cut)

    @classmethod
    def all_eligible(cls, ranking: Iterable[PatientId]) -> "PriorityOrder":
        ranking = tuple(ranking)
        return cls(ranking, len(ranking))

    def __contains__(self, patient: object) -> bool:
        return patient in self._position

    def rank(self, slot: Slot) -> int:
        """Position in the order, the sentinel included; lower is higher priority."""
        if slot is EMPTY:
            return self.eligible_count
        k = self._position[slot]
        return k if k < self.eligible_count else k + 1

    def prefers(self, a: Slot, b: Slot) -> bool:
        """``a`` is ranked strictly above ``b``."""
        return self.rank(a) < self.rank(b)

    def weakly_prefers(self, a: Slot, b: Slot) -> bool:
        return self.rank(a) <= self.rank(b)

    def is_eligible(self, patient: PatientId) -> bool:
        return self._position[patient] < self.eligible_count

    @property
    def eligible(self) -> Tuple[PatientId, ...]:
        return self.ranking[: self.eligible_count]

    def as_sequence(self) -> Tuple[Slot, ...]:
        return self.eligible + (EMPTY,) + self.ranking[self.eligible_count:]

    def cutoff_values(self) -> Tuple[Slot, ...]:
        """Admissible cutoffs from the most to the least selective."""
        return self.eligible + (EMPTY,)

    def interval(self, high: Slot, low: Slot) -> Tuple[Slot, ...]:
        """Cutoff values ``v`` with ``high ⪰ v ⪰ low``, most selective first."""
        values = self.cutoff_values()
        start, stop = values.index(high), values.index(low)
        return values[start: stop + 1]

    def highest(self, slots: Iterable[Slot]) -> Slot:
        return min(slots, key=self.rank)

    def lowest(self, slots: Iterable[Slot]) -> Slot:
        return max(slots, key=self.rank)

    def sort(self, slots: Iterable[Slot]) -> list:
        return sorted(slots, key=self.rank)


@dataclass(frozen=True)
class Instance:
    """A reserve system: patients, categories, capacities and per-category priorities."""

    patients: Tuple[PatientId, ...]
    categories: Tuple[CategoryId, ...]
    capacity: Mapping[CategoryId, int]
    priority: Mapping[CategoryId, PriorityOrder]
    total_units: int

    @classmethod
    def build(
        cls,
        patients: Sequence[PatientId],
        orders: Mapping[CategoryId, PriorityOrder],
        capacity: Mapping[CategoryId, int],
        total_units: Optional[int] = None,
    ) -> "Instance":
        """Assemble an instance; categories follow the order of ``orders``."""
        categories = tuple(orders)
        if total_units is None:
            total_units = sum(capacity.get(c, 0) for c in categories)
        return cls(
            patients=tuple(patients),
            categories=categories,
            capacity=dict(capacity),
            priority=dict(orders),
            total_units=total_units,
        )

    def order(self, category: CategoryId) -> PriorityOrder:
        return self.priority[category]


K = TypeVar("K")
V = TypeVar("V")


class FrozenAssignment(Mapping[K, V]):
    """Immutable, hashable mapping with declaration-order iteration."""

    __slots__ = ("_data", "_hash")

    def __init__(self, data: Union[Mapping[K, V], Iterable[Tuple[K, V]]]) -> None:
        self._data: Dict[K, V] = dict(data)
        self._hash: Optional[int] = None

    def __getitem__(self, key: K) -> V:
        return self._data[key]

    def __iter__(self) -> Iterator[K]:
        return iter(self._data)

    def __len__(self) -> int:
        return len(self._data)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._data.items()))
        return self._hash

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FrozenAssignment):
            return type(self) is type(other) and self._data == other._data
        return NotImplemented

    def __repr__(self) -> str:
        body = ", ".join(f"{k!r}: {v!r}" for k, v in self._data.items())
        return f"{type(self).__name__}({{{body}}})"


class Matching(FrozenAssignment[PatientId, Placement]):
    """Assignment of every patient to a category or to UNMATCHED."""

    __slots__ = ("_load",)

    def __init__(self, data: Union[Mapping[PatientId, Placement], Iterable]) -> None:
        super().__init__(data)
        load: Dict[CategoryId, int] = {}
        for placement in self._data.values():
            if placement is not UNMATCHED:
                load[placement] = load.get(placement, 0) + 1
        self._load = load

    @classmethod
    def unmatched(cls, patients: Iterable[PatientId]) -> "Matching":
        return cls({patient: UNMATCHED for patient in patients})

    def count(self, category: CategoryId) -> int:
        """``|µ⁻¹(c)|``."""
        return self._load.get(category, 0)

    def assigned_to(self, category: CategoryId) -> FrozenSet[PatientId]:
        """``µ⁻¹(c)``."""
        return frozenset(p for p, c in self._data.items() if c == category)

    def matched_set(self, subset: Optional[Iterable[PatientId]] = None) -> FrozenSet[PatientId]:
        """Patients of ``subset`` (all patients by default) that are matched."""
        pool = self._data if subset is None else subset
        return frozenset(p for p in pool if self._data[p] is not UNMATCHED)

    def unmatched_set(self) -> FrozenSet[PatientId]:
        return frozenset(p for p, c in self._data.items() if c is UNMATCHED)

    def with_assignment(self, patient: PatientId, placement: Placement) -> "Matching":
        data = dict(self._data)
        data[patient] = placement
        return Matching(data)


class CutoffVector(FrozenAssignment[CategoryId, Slot]):
    """One cutoff, a patient or the sentinel, per category."""

    __slots__ = ()


@dataclass(frozen=True)
class PreferenceProfile:
    """Artificial strict preferences of patients over categories.

    Each patient lists, best first, the categories they rank above UNMATCHED; categories not
    listed sit below UNMATCHED and never influence deferred acceptance.
    """

    prefs: Mapping[PatientId, Tuple[CategoryId, ...]]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "prefs", {patient: tuple(lst) for patient, lst in self.prefs.items()}
        )

    def acceptable(self, patient: PatientId) -> Tuple[CategoryId, ...]:
        return self.prefs.get(patient, ())


@dataclass(frozen=True)
class PrecedenceOrder:
    """Order in which categories are processed by sequential reserve matching."""

    sequence: Tuple[CategoryId, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "sequence", tuple(self.sequence))

    def __iter__(self) -> Iterator[CategoryId]:
        return iter(self.sequence)

    def __len__(self) -> int:
        return len(self.sequence)

    def position(self, category: CategoryId) -> int:
        return self.sequence.index(category)
