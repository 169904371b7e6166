"""Individual-proposing deferred acceptance over reserve categories."""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from src.models.errors import InvalidProfile
from src.models.reserve import (
    UNMATCHED,
    CategoryId,
    Instance,
    Matching,
    PatientId,
    PrecedenceOrder,
    PreferenceProfile,
)
from src.oracle.guard import PROFILE_GUARD, SizeGuard

logger = logging.getLogger(__name__)


@dataclass
class DARound:
    """Applications and rejections of one round."""

    number: int
    applications: Dict[CategoryId, Tuple[PatientId, ...]]
    rejected: Tuple[PatientId, ...]


@dataclass
class DAResult:
    matching: Matching
    rounds: List[DARound] = field(default_factory=list)
    proposals: int = 0


def validate_profile(instance: Instance, profile: PreferenceProfile) -> PreferenceProfile:
    """Each patient ranks above UNMATCHED exactly the categories they are eligible for."""
    unknown = set(profile.prefs) - set(instance.patients)
    if unknown:
        raise InvalidProfile(f"profile lists unknown patients: {sorted(map(str, unknown))}")
    for patient in instance.patients:
        listed = profile.acceptable(patient)
        if len(set(listed)) != len(listed):
            raise InvalidProfile(f"{patient!r} lists a category twice")
        eligible = {c for c in instance.categories if instance.priority[c].is_eligible(patient)}
        if set(listed) != eligible:
            raise InvalidProfile(
                f"{patient!r} must rank exactly their eligible categories above UNMATCHED"
            )
    return profile


def _propose(
    instance: Instance,
    prefs: Dict[PatientId, Tuple[CategoryId, ...]],
    record: bool = False,
) -> DAResult:
    capacity = instance.capacity
    rank = {c: instance.priority[c].rank for c in instance.categories}
    held: Dict[CategoryId, List[PatientId]] = {c: [] for c in instance.categories}
    next_choice = {p: 0 for p in instance.patients}
    proposers = [p for p in instance.patients if prefs[p]]
    result = DAResult(matching=Matching.unmatched(instance.patients))
    number = 0

    while proposers:
        number += 1
        applicants = {c: list(members) for c, members in held.items()}
        fresh: Dict[CategoryId, List[PatientId]] = {}
        for patient in proposers:
            category = prefs[patient][next_choice[patient]]
            next_choice[patient] += 1
            applicants[category].append(patient)
            fresh.setdefault(category, []).append(patient)
            result.proposals += 1

        rejected: List[PatientId] = []
        for category in fresh:
            ranked = sorted(applicants[category], key=rank[category])
            held[category] = ranked[: capacity[category]]
            rejected.extend(ranked[capacity[category]:])

        if record:
            result.rounds.append(
                DARound(
                    number=number,
                    applications={c: tuple(ps) for c, ps in fresh.items()},
                    rejected=tuple(rejected),
                )
            )
        proposers = [p for p in rejected if next_choice[p] < len(prefs[p])]

    assignment = {p: UNMATCHED for p in instance.patients}
    for category, members in held.items():
        for patient in members:
            assignment[patient] = category
    result.matching = Matching(assignment)
    return result


def run_deferred_acceptance(
    instance: Instance, profile: PreferenceProfile, trace: bool = False
) -> DAResult:
    """Deferred acceptance with the round-by-round trace when ``trace`` is set."""
    validate_profile(instance, profile)
    prefs = {p: profile.acceptable(p) for p in instance.patients}
    result = _propose(instance, prefs, record=trace)
    bound = len(instance.patients) * (len(instance.categories) + 1)
    if result.proposals > bound:
        raise RuntimeError(f"deferred acceptance made {result.proposals} proposals, bound is {bound}")
    logger.debug("deferred acceptance finished after %d proposals", result.proposals)
    return result


def deferred_acceptance(instance: Instance, profile: PreferenceProfile) -> Matching:
    return run_deferred_acceptance(instance, profile).matching


def profile_from_precedence(instance: Instance, precedence: PrecedenceOrder) -> PreferenceProfile:
    """Every patient ranks their eligible categories in precedence order."""
    return PreferenceProfile(
        {
            patient: tuple(
                c for c in precedence if instance.priority[c].is_eligible(patient)
            )
            for patient in instance.patients
        }
    )


def enumerate_da_induced(instance: Instance, guard: Optional[SizeGuard] = None) -> Tuple[Matching, ...]:
    """All distinct DA outcomes over every admissible preference profile.

    Only the orderings of each patient's eligible categories are enumerated; categories below
    UNMATCHED cannot affect the outcome.
    """
    guard = guard or PROFILE_GUARD
    guard.check(instance)
    eligible = [
        tuple(c for c in instance.categories if instance.priority[c].is_eligible(p))
        for p in instance.patients
    ]
    total = guard.check_profiles(len(e) for e in eligible)
    logger.info("enumerating %d preference profiles", total)

    outcomes: Dict[Matching, None] = {}
    for lists in itertools.product(*(itertools.permutations(e) for e in eligible)):
        prefs = dict(zip(instance.patients, lists))
        outcomes.setdefault(_propose(instance, prefs).matching, None)
    return tuple(outcomes)
