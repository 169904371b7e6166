"""Instance validation and the three axioms of reserve matchings."""

import logging
from dataclasses import dataclass, field
from typing import List, Tuple

from src.models.errors import (
    CapacityMismatch,
    DuplicatePatient,
    InvalidInstance,
    InvalidMatching,
    MalformedPriority,
    UnknownCategory,
    UnknownPatient,
)
from src.models.reserve import (
    UNMATCHED,
    CategoryId,
    Instance,
    Matching,
    PatientId,
)

logger = logging.getLogger(__name__)


def validate_instance(raw: Instance) -> Instance:
    """Return ``raw`` unchanged when every instance invariant holds."""
    if len(set(raw.patients)) != len(raw.patients):
        seen = set()
        duplicates = [p for p in raw.patients if p in seen or seen.add(p)]
        raise DuplicatePatient(f"duplicate patients: {duplicates}")
    if len(set(raw.categories)) != len(raw.categories):
        raise InvalidInstance("duplicate categories")

    patients = set(raw.patients)
    for category in raw.categories:
        if category not in raw.capacity:
            raise InvalidInstance(f"missing capacity for category {category!r}")
        if raw.capacity[category] < 0:
            raise InvalidInstance(f"negative capacity for category {category!r}")
        order = raw.priority.get(category)
        if order is None:
            raise MalformedPriority(f"missing priority order for category {category!r}")
        if len(order.ranking) != len(set(order.ranking)):
            raise MalformedPriority(f"priority of {category!r} repeats a patient")
        if set(order.ranking) != patients:
            missing = sorted(map(str, patients - set(order.ranking)))
            extra = sorted(map(str, set(order.ranking) - patients))
            raise MalformedPriority(
                f"priority of {category!r} does not rank exactly the patients "
                f"(missing={missing}, unknown={extra})"
            )
        if not 0 <= order.eligible_count <= len(order.ranking):
            raise MalformedPriority(f"sentinel of {category!r} out of range")

    total = sum(raw.capacity[c] for c in raw.categories)
    if total != raw.total_units:
        raise CapacityMismatch(f"capacities sum to {total}, total units is {raw.total_units}")
    return raw


def validate_matching(instance: Instance, matching: Matching) -> Matching:
    """Check that ``matching`` covers exactly the patients and respects capacities."""
    if set(matching) != set(instance.patients):
        raise InvalidMatching("matching domain differs from the patient set")
    categories = set(instance.categories)
    for patient, placement in matching.items():
        if placement is not UNMATCHED and placement not in categories:
            raise InvalidMatching(f"{patient!r} assigned to unknown category {placement!r}")
    for category in instance.categories:
        if matching.count(category) > instance.capacity[category]:
            raise InvalidMatching(f"category {category!r} over capacity")
    return matching


def is_eligible(instance: Instance, patient: PatientId, category: CategoryId) -> bool:
    if category not in instance.priority:
        raise UnknownCategory(f"unknown category {category!r}")
    order = instance.priority[category]
    if patient not in order:
        raise UnknownPatient(f"unknown patient {patient!r}")
    return order.is_eligible(patient)


def complies_with_eligibility(instance: Instance, matching: Matching) -> bool:
    """Every matched patient is eligible for their category."""
    return all(
        instance.priority[c].is_eligible(p)
        for p, c in matching.items()
        if c is not UNMATCHED
    )


def is_non_wasteful(instance: Instance, matching: Matching) -> bool:
    """No unmatched patient is eligible for a category with an idle unit."""
    idle = [c for c in instance.categories if matching.count(c) < instance.capacity[c]]
    if not idle:
        return True
    for patient in matching.unmatched_set():
        if any(instance.priority[c].is_eligible(patient) for c in idle):
            return False
    return True


def respects_priorities(instance: Instance, matching: Matching) -> bool:
    """Every patient matched to a category outranks every unmatched patient there."""
    unmatched = matching.unmatched_set()
    if not unmatched:
        return True
    for category in instance.categories:
        assigned = matching.assigned_to(category)
        if not assigned:
            continue
        order = instance.priority[category]
        if order.rank(order.lowest(assigned)) > order.rank(order.highest(unmatched)):
            return False
    return True


def satisfies_axioms(instance: Instance, matching: Matching) -> bool:
    return (
        complies_with_eligibility(instance, matching)
        and is_non_wasteful(instance, matching)
        and respects_priorities(instance, matching)
    )


@dataclass
class AxiomReport:
    """Per-axiom verdicts with the witnesses of each violation."""

    eligibility: bool = True
    non_wasteful: bool = True
    priorities: bool = True
    ineligible_pairs: List[Tuple[PatientId, CategoryId]] = field(default_factory=list)
    wasted_pairs: List[Tuple[PatientId, CategoryId]] = field(default_factory=list)
    priority_inversions: List[Tuple[PatientId, PatientId, CategoryId]] = field(default_factory=list)

    @property
    def all_hold(self) -> bool:
        return self.eligibility and self.non_wasteful and self.priorities

    def to_dict(self) -> dict:
        return {
            "complies_with_eligibility": self.eligibility,
            "non_wasteful": self.non_wasteful,
            "respects_priorities": self.priorities,
        }


def axiom_report(instance: Instance, matching: Matching) -> AxiomReport:
    """Evaluate each axiom and collect the patient/category pairs that break it."""
    report = AxiomReport()
    for patient, category in matching.items():
        if category is not UNMATCHED and not instance.priority[category].is_eligible(patient):
            report.ineligible_pairs.append((patient, category))

    unmatched = [p for p in instance.patients if matching[p] is UNMATCHED]
    for category in instance.categories:
        order = instance.priority[category]
        if matching.count(category) < instance.capacity[category]:
            report.wasted_pairs.extend(
                (p, category) for p in unmatched if order.is_eligible(p)
            )
        for holder in order.sort(matching.assigned_to(category)):
            report.priority_inversions.extend(
                (holder, p, category) for p in unmatched if not order.prefers(holder, p)
            )

    report.eligibility = not report.ineligible_pairs
    report.non_wasteful = not report.wasted_pairs
    report.priorities = not report.priority_inversions
    if not report.all_hold:
        logger.debug(
            "axiom violations: ineligible=%s wasted=%s inversions=%s",
            report.ineligible_pairs,
            report.wasted_pairs,
            report.priority_inversions,
        )
    return report


def pareto_dominates(better: Matching, worse: Matching) -> bool:
    """``better`` matches a strict superset of the patients ``worse`` matches."""
    return worse.matched_set() < better.matched_set()
