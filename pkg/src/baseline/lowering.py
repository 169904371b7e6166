"""Lowering baseline instances to general reserve instances, and beneficiary counts."""

import logging
from typing import FrozenSet

from src.combinatorics.bipartite import BipartiteGraph, max_cardinality_matching
from src.models.baseline import BaselineInstance, ReserveMode
from src.models.reserve import UNMATCHED, Instance, Matching, PatientId, PriorityOrder

logger = logging.getLogger(__name__)


def lower_instance(baseline: BaselineInstance) -> Instance:
    """Per-category orders: beneficiaries in baseline order above everyone else.

    Under soft reserves every patient is eligible everywhere. Under hard reserves the sentinel
    of a preferential category sits right after its beneficiaries. The unreserved category
    always follows the baseline order with everyone eligible.
    """
    baseline.validate()
    orders = {}
    for category, members in baseline.beneficiaries.items():
        ranking = tuple(p for p in baseline.baseline if p in members) + tuple(
            p for p in baseline.baseline if p not in members
        )
        eligible = len(ranking) if baseline.mode is ReserveMode.SOFT else len(members)
        orders[category] = PriorityOrder(ranking, eligible)
    orders[baseline.unreserved] = PriorityOrder.all_eligible(baseline.baseline)
    return Instance.build(baseline.baseline, orders, baseline.capacity)


def beneficiary_assigned(baseline: BaselineInstance, matching: Matching) -> FrozenSet[PatientId]:
    """Patients holding a preferential category they benefit from."""
    return frozenset(
        p for p, c in matching.items()
        if c is not UNMATCHED and c != baseline.unreserved and baseline.is_beneficiary(p, c)
    )


def beneficiary_count(baseline: BaselineInstance, matching: Matching) -> int:
    return len(beneficiary_assigned(baseline, matching))


def beneficiary_graph(baseline: BaselineInstance) -> BipartiteGraph:
    """Patients against preferential categories, with an edge for each beneficiary."""
    return BipartiteGraph(
        left=baseline.baseline,
        right={c: baseline.capacity[c] for c in baseline.preferential},
        edges=frozenset(
            (p, c) for c, members in baseline.beneficiaries.items() for p in members
        ),
    )


def max_beneficiary_count(baseline: BaselineInstance) -> int:
    """Largest number of patients simultaneously placed in categories they benefit from."""
    return max_cardinality_matching(beneficiary_graph(baseline)).size


def is_maximal_in_beneficiary_assignment(baseline: BaselineInstance, matching: Matching) -> bool:
    return beneficiary_count(baseline, matching) == max_beneficiary_count(baseline)
