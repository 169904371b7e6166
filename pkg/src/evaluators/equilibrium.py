"""Cutoff vectors, budget sets and cutoff equilibria."""

import itertools
import logging
import math
from typing import FrozenSet, Iterator, List, Tuple

from src.evaluators.axioms import satisfies_axioms
from src.models.errors import AxiomViolation, InvalidInstance
from src.models.reserve import (
    EMPTY,
    UNMATCHED,
    CategoryId,
    CutoffVector,
    Instance,
    Matching,
    PatientId,
    PriorityOrder,
    Slot,
)

logger = logging.getLogger(__name__)


def validate_cutoff_vector(instance: Instance, cutoffs: CutoffVector) -> CutoffVector:
    """Every cutoff must be the sentinel or an eligible patient."""
    if set(cutoffs) != set(instance.categories):
        raise InvalidInstance("cutoff vector must cover exactly the categories")
    for category, cutoff in cutoffs.items():
        order = instance.priority[category]
        if cutoff is not EMPTY and (cutoff not in order or not order.is_eligible(cutoff)):
            raise InvalidInstance(f"cutoff {cutoff!r} of {category!r} ranks below the sentinel")
    return cutoffs


def compare_cutoffs(order: PriorityOrder, a: Slot, b: Slot) -> int:
    """1 if ``a`` is more selective than ``b``, -1 if less, 0 if equal."""
    ra, rb = order.rank(a), order.rank(b)
    return (ra < rb) - (ra > rb)


def budget_set(instance: Instance, cutoffs: CutoffVector, patient: PatientId) -> FrozenSet[CategoryId]:
    """Categories whose cutoff the patient weakly clears."""
    return frozenset(
        c for c in instance.categories
        if instance.priority[c].weakly_prefers(patient, cutoffs[c])
    )


def is_cutoff_equilibrium(instance: Instance, cutoffs: CutoffVector, matching: Matching) -> bool:
    for category in instance.categories:
        if matching.count(category) < instance.capacity[category] and cutoffs[category] is not EMPTY:
            return False
    for patient in instance.patients:
        budget = budget_set(instance, cutoffs, patient)
        placement = matching[patient]
        if placement is UNMATCHED:
            if budget:
                return False
        elif placement not in budget:
            return False
    return True


def max_cutoff_vector(instance: Instance, matching: Matching) -> CutoffVector:
    """Lowest-priority holder of each exhausted category, the sentinel elsewhere."""
    cutoffs = {}
    for category in instance.categories:
        assigned = matching.assigned_to(category)
        if assigned and len(assigned) == instance.capacity[category]:
            cutoffs[category] = instance.priority[category].lowest(assigned)
        else:
            cutoffs[category] = EMPTY
    return CutoffVector(cutoffs)


def min_cutoff_vector(instance: Instance, matching: Matching) -> CutoffVector:
    """Lowest matched patient above the best unmatched eligible patient, per category."""
    unmatched = matching.unmatched_set()
    matched = matching.matched_set()
    cutoffs = {}
    for category in instance.categories:
        order = instance.priority[category]
        best_unmatched = order.highest(list(unmatched) + [EMPTY])
        if best_unmatched is EMPTY:
            cutoffs[category] = EMPTY
            continue
        above = [p for p in matched if order.prefers(p, best_unmatched)]
        cutoffs[category] = order.lowest(above) if above else EMPTY
    return CutoffVector(cutoffs)


def _interval(
    instance: Instance, matching: Matching, category: CategoryId, high: Slot, low: Slot
) -> Tuple[Slot, ...]:
    order = instance.priority[category]
    if instance.capacity[category] > 0:
        return order.interval(high, low)
    # No units: any cutoff strictly above the best unmatched eligible patient, none if they
    # top the order.
    values = order.cutoff_values()
    best_unmatched = order.highest(list(matching.unmatched_set()) + [EMPTY])
    if best_unmatched is EMPTY:
        return values
    return values[: values.index(best_unmatched)]


def cutoff_interval(instance: Instance, matching: Matching, category: CategoryId) -> Tuple[Slot, ...]:
    """Equilibrium cutoffs of one category, from the maximum down to the minimum.

    Empty when no cutoff of the category supports ``matching``.
    """
    high = max_cutoff_vector(instance, matching)[category]
    low = min_cutoff_vector(instance, matching)[category]
    return _interval(instance, matching, category, high, low)


def _require_axioms(instance: Instance, matching: Matching) -> None:
    if not satisfies_axioms(instance, matching):
        raise AxiomViolation("cutoff intervals are defined only for matchings satisfying the axioms")


def _intervals(instance: Instance, matching: Matching) -> List[Tuple[Slot, ...]]:
    high = max_cutoff_vector(instance, matching)
    low = min_cutoff_vector(instance, matching)
    return [_interval(instance, matching, c, high[c], low[c]) for c in instance.categories]


def count_equilibrium_cutoffs(instance: Instance, matching: Matching) -> int:
    _require_axioms(instance, matching)
    return math.prod(len(interval) for interval in _intervals(instance, matching))


def enumerate_equilibrium_cutoffs(instance: Instance, matching: Matching) -> Iterator[CutoffVector]:
    """Every cutoff vector supporting ``matching`` as a cutoff equilibrium, produced lazily.

    The axioms are checked when this is called, before the first vector is requested.
    """
    _require_axioms(instance, matching)
    intervals = _intervals(instance, matching)
    logger.debug("equilibrium cutoff intervals: %s", intervals)
    return (CutoffVector(zip(instance.categories, values)) for values in itertools.product(*intervals))
