"""Exhaustive enumerators used as ground truth on small instances."""

import itertools
import logging
from typing import Dict, FrozenSet, Iterator, List, Optional

from src.baseline.lowering import beneficiary_count, lower_instance, max_beneficiary_count
from src.evaluators.axioms import satisfies_axioms
from src.evaluators.equilibrium import budget_set, is_cutoff_equilibrium
from src.models.baseline import BaselineInstance
from src.models.reserve import (
    UNMATCHED,
    CutoffVector,
    Instance,
    Matching,
    Placement,
)
from src.oracle.guard import MATCHING_GUARD, SizeGuard

logger = logging.getLogger(__name__)


def enumerate_matchings(instance: Instance, guard: Optional[SizeGuard] = None) -> Iterator[Matching]:
    """Every capacity-respecting assignment exactly once, eligibility ignored.

    Patients are branched in declaration order, each over the categories in declaration order
    and then UNMATCHED.
    """
    (guard or MATCHING_GUARD).check(instance)
    patients = instance.patients
    options = list(instance.categories) + [UNMATCHED]
    remaining = dict(instance.capacity)
    chosen: List[Placement] = []

    def extend(position: int) -> Iterator[Matching]:
        if position == len(patients):
            yield Matching(zip(patients, chosen))
            return
        for option in options:
            if option is not UNMATCHED:
                if remaining[option] == 0:
                    continue
                remaining[option] -= 1
            chosen.append(option)
            yield from extend(position + 1)
            chosen.pop()
            if option is not UNMATCHED:
                remaining[option] += 1

    yield from extend(0)


def axiom_satisfying_set(instance: Instance, guard: Optional[SizeGuard] = None) -> FrozenSet[Matching]:
    found = frozenset(m for m in enumerate_matchings(instance, guard) if satisfies_axioms(instance, m))
    logger.debug("%d matchings satisfy the axioms", len(found))
    return found


def enumerate_cutoff_vectors(instance: Instance, guard: Optional[SizeGuard] = None) -> Iterator[CutoffVector]:
    """Every choice of an eligible patient or the sentinel per category."""
    (guard or MATCHING_GUARD).check(instance)
    values = [instance.priority[c].cutoff_values() for c in instance.categories]
    for combo in itertools.product(*values):
        yield CutoffVector(zip(instance.categories, combo))


def _supported_by(instance: Instance, cutoffs: CutoffVector) -> Iterator[Matching]:
    """Matchings placing every patient with a non-empty budget set inside it."""
    patients = instance.patients
    budgets = [
        [c for c in instance.categories if c in budget_set(instance, cutoffs, p)]
        for p in patients
    ]
    remaining = dict(instance.capacity)
    chosen: List[Placement] = []

    def extend(position: int) -> Iterator[Matching]:
        if position == len(patients):
            matching = Matching(zip(patients, chosen))
            if is_cutoff_equilibrium(instance, cutoffs, matching):
                yield matching
            return
        options = budgets[position] or [UNMATCHED]
        for option in options:
            if option is not UNMATCHED:
                if remaining[option] == 0:
                    continue
                remaining[option] -= 1
            chosen.append(option)
            yield from extend(position + 1)
            chosen.pop()
            if option is not UNMATCHED:
                remaining[option] += 1

    yield from extend(0)


def equilibrium_supported_set(instance: Instance, guard: Optional[SizeGuard] = None) -> FrozenSet[Matching]:
    """Matchings that form a cutoff equilibrium with at least one cutoff vector."""
    supported: Dict[Matching, None] = {}
    for cutoffs in enumerate_cutoff_vectors(instance, guard):
        for matching in _supported_by(instance, cutoffs):
            supported.setdefault(matching, None)
    logger.debug("%d matchings are supported by a cutoff vector", len(supported))
    return frozenset(supported)


def supporting_cutoffs(
    instance: Instance, matching: Matching, guard: Optional[SizeGuard] = None
) -> FrozenSet[CutoffVector]:
    """Cutoff vectors forming an equilibrium with ``matching``, found by exhaustion."""
    return frozenset(
        f for f in enumerate_cutoff_vectors(instance, guard)
        if is_cutoff_equilibrium(instance, f, matching)
    )


def enumerate_beneficiary_maximal_admissible(
    baseline: BaselineInstance, guard: Optional[SizeGuard] = None
) -> FrozenSet[Matching]:
    """Axiom-satisfying matchings of the lowered instance that are maximal in beneficiary
    assignment."""
    instance = lower_instance(baseline)
    best = max_beneficiary_count(baseline)
    return frozenset(
        m for m in axiom_satisfying_set(instance, guard)
        if beneficiary_count(baseline, m) == best
    )
