"""Sequential reserve matching under an order of precedence."""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Iterator, List, Tuple

from src.models.errors import InvalidPrecedence, NotAdjacent
from src.models.reserve import (
    UNMATCHED,
    CategoryId,
    Instance,
    Matching,
    PatientId,
    PrecedenceOrder,
)

logger = logging.getLogger(__name__)


@dataclass
class SequentialStep:
    """Patients matched when one category is processed."""

    step: int
    category: CategoryId
    patients: Tuple[PatientId, ...]


@dataclass
class SequentialResult:
    matching: Matching
    precedence: PrecedenceOrder
    steps: List[SequentialStep] = field(default_factory=list)


def validate_precedence(instance: Instance, precedence: PrecedenceOrder) -> PrecedenceOrder:
    if len(precedence.sequence) != len(set(precedence.sequence)):
        raise InvalidPrecedence("precedence order repeats a category")
    if set(precedence.sequence) != set(instance.categories):
        raise InvalidPrecedence("precedence order must list every category exactly once")
    return precedence


def run_sequential_reserve(instance: Instance, precedence: PrecedenceOrder) -> SequentialResult:
    """Process categories in precedence order, each taking its highest-priority eligible
    patients among those still unmatched."""
    validate_precedence(instance, precedence)
    assignment = {p: UNMATCHED for p in instance.patients}
    result = SequentialResult(matching=Matching.unmatched(instance.patients), precedence=precedence)

    for step, category in enumerate(precedence, start=1):
        order = instance.priority[category]
        chosen = tuple(
            itertools.islice(
                (p for p in order.eligible if assignment[p] is UNMATCHED),
                instance.capacity[category],
            )
        )
        for patient in chosen:
            assignment[patient] = category
        result.steps.append(SequentialStep(step=step, category=category, patients=chosen))
        logger.debug("step %d: %r takes %s", step, category, list(chosen))

    result.matching = Matching(assignment)
    return result


def sequential_reserve_matching(instance: Instance, precedence: PrecedenceOrder) -> Matching:
    return run_sequential_reserve(instance, precedence).matching


def adjacent_swap(
    precedence: PrecedenceOrder, category: CategoryId, predecessor: CategoryId
) -> PrecedenceOrder:
    """Move ``category`` ahead of its immediate predecessor."""
    sequence = list(precedence.sequence)
    if category not in sequence or predecessor not in sequence:
        raise NotAdjacent(f"{category!r} or {predecessor!r} missing from the precedence order")
    k = sequence.index(category)
    if k == 0 or sequence[k - 1] != predecessor:
        raise NotAdjacent(f"{predecessor!r} does not immediately precede {category!r}")
    sequence[k - 1], sequence[k] = sequence[k], sequence[k - 1]
    return PrecedenceOrder(tuple(sequence))


def adjacent_swaps(precedence: PrecedenceOrder) -> Iterator[Tuple[CategoryId, PrecedenceOrder]]:
    """Every ``(c, ⊳')`` where ``⊳'`` moves ``c`` one position earlier."""
    sequence = precedence.sequence
    for k in range(1, len(sequence)):
        yield sequence[k], adjacent_swap(precedence, sequence[k], sequence[k - 1])


def all_precedence_orders(instance: Instance) -> Iterator[PrecedenceOrder]:
    for sequence in itertools.permutations(instance.categories):
        yield PrecedenceOrder(sequence)
