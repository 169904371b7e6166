"""Seeded random instances for the property suites."""

import random
from typing import List, Optional

from src.models.baseline import BaselineInstance, ReserveMode
from src.models.reserve import Instance, PriorityOrder


def _capacities(rng: random.Random, count: int, max_units: int, allow_empty: bool) -> List[int]:
    """``count`` capacities summing to at most ``max_units``; positive unless ``allow_empty``."""
    floor = 0 if allow_empty else 1
    if count * floor > max_units:
        raise ValueError(f"cannot give {count} categories a unit each within {max_units} units")
    total = rng.randint(count * floor, max_units)
    capacities = [floor] * count
    for _ in range(total - count * floor):
        capacities[rng.randrange(count)] += 1
    return capacities


def random_instance(
    rng: random.Random,
    max_patients: int = 6,
    max_categories: int = 3,
    max_units: int = 6,
    allow_empty_categories: bool = False,
) -> Instance:
    """Independent random priority orders with a random eligibility cut per category.

    Empty categories are off by default: an eligible patient left out of a zero-capacity
    category cannot be priced out by any cutoff.
    """
    patients = [f"i{k}" for k in range(1, rng.randint(1, max_patients) + 1)]
    categories = [f"c{k}" for k in range(1, rng.randint(1, max_categories) + 1)]
    capacity = dict(zip(categories, _capacities(rng, len(categories), max_units, allow_empty_categories)))
    orders = {}
    for category in categories:
        ranking = patients[:]
        rng.shuffle(ranking)
        orders[category] = PriorityOrder(tuple(ranking), rng.randint(0, len(ranking)))
    return Instance.build(patients, orders, capacity)


def random_baseline_instance(
    rng: random.Random,
    mode: Optional[ReserveMode] = None,
    disjoint: bool = True,
    max_patients: int = 6,
    max_categories: int = 3,
    max_units: int = 6,
    allow_empty_categories: bool = False,
) -> BaselineInstance:
    """Random baseline order with up to ``max_categories - 1`` preferential categories.

    With ``disjoint`` each patient benefits from at most one preferential category; the
    reserve mode is drawn at random unless given.
    """
    patients = [f"i{k}" for k in range(1, rng.randint(1, max_patients) + 1)]
    order = patients[:]
    rng.shuffle(order)
    preferential = [f"c{k}" for k in range(1, rng.randint(0, max_categories - 1) + 1)]
    beneficiaries = {c: set() for c in preferential}
    for patient in patients:
        if not preferential:
            break
        if disjoint:
            choice = rng.choice(preferential + [None])
            if choice is not None:
                beneficiaries[choice].add(patient)
        else:
            for c in preferential:
                if rng.random() < 0.4:
                    beneficiaries[c].add(patient)
    categories = preferential + ["u"]
    capacity = dict(zip(categories, _capacities(rng, len(categories), max_units, allow_empty_categories)))
    return BaselineInstance(
        baseline=tuple(order),
        unreserved="u",
        beneficiaries=beneficiaries,
        capacity=capacity,
        mode=mode if mode is not None else rng.choice(list(ReserveMode)),
    )
