"""Smart reserve matching: an exhaustive reference procedure and a polynomial one.

Patients are processed in baseline order. While fewer than ``n`` of them have been committed
to the unreserved category, each patient is first offered an unreserved unit; otherwise, or when
that would cost a beneficiary placement, the patient is committed to a preferential category
they benefit from if this keeps the matching maximal in beneficiary assignment. The units left
over go to the remaining patients, preferential categories first and unreserved units last.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple

from src.baseline.lowering import (
    beneficiary_assigned,
    beneficiary_count,
    beneficiary_graph,
    lower_instance,
)
from src.combinatorics.assignment import EPSILON, KAPPA, WeightedAssignment, solve_assignment
from src.combinatorics.bipartite import BipartiteGraph, max_cardinality_matching
from src.models.baseline import BaselineInstance, SmartConfig
from src.models.reserve import UNMATCHED, CategoryId, Instance, Matching, PatientId
from src.oracle.brute_force import enumerate_matchings
from src.oracle.guard import SizeGuard

logger = logging.getLogger(__name__)


class Commitment(str, Enum):
    UNRESERVED = "unreserved"
    PREFERENTIAL = "preferential"
    NONE = "none"


@dataclass
class SmartStep:
    """Decision taken for one patient in the commitment phase."""

    k: int
    patient: PatientId
    commitment: Commitment


@dataclass
class SmartTrace:
    n: int
    beneficiary_max: Optional[int] = None
    steps: List[SmartStep] = field(default_factory=list)

    @property
    def committed_unreserved(self) -> Tuple[PatientId, ...]:
        return tuple(s.patient for s in self.steps if s.commitment is Commitment.UNRESERVED)

    @property
    def committed_preferential(self) -> Tuple[PatientId, ...]:
        return tuple(s.patient for s in self.steps if s.commitment is Commitment.PREFERENTIAL)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "beneficiary_max": self.beneficiary_max,
            "steps": [
                {"k": s.k, "patient": s.patient, "commitment": s.commitment.value}
                for s in self.steps
            ],
        }


@dataclass
class SmartResult:
    matchings: Tuple[Matching, ...]
    trace: SmartTrace

    @property
    def matching(self) -> Matching:
        return self.matchings[0]


@dataclass(frozen=True)
class SmartSummary:
    """Sets shared by every smart reserve matching with the same ``n``."""

    unreserved: FrozenSet[PatientId]
    beneficiary_assigned: FrozenSet[PatientId]
    matched: FrozenSet[PatientId]


def _complete(
    baseline: BaselineInstance, instance: Instance, kept: Mapping[PatientId, CategoryId]
) -> Matching:
    """Keep the committed placements and hand out the leftover units.

    Preferential categories are filled in declaration order, then the unreserved category; each
    unit goes to the highest-priority eligible patient that is still free.
    """
    assignment = {p: UNMATCHED for p in instance.patients}
    assignment.update(kept)
    load: Dict[CategoryId, int] = {}
    for category in kept.values():
        load[category] = load.get(category, 0) + 1

    for category in baseline.categories:
        free = instance.capacity[category] - load.get(category, 0)
        for patient in instance.priority[category].eligible:
            if free <= 0:
                break
            if assignment[patient] is UNMATCHED:
                assignment[patient] = category
                free -= 1
    return Matching(assignment)


def run_smart_reserve_exhaustive(
    baseline: BaselineInstance, config: SmartConfig, guard: Optional[SizeGuard] = None
) -> SmartResult:
    """Filter every matching of the lowered instance patient by patient."""
    config.validate(baseline)
    instance = lower_instance(baseline)
    u = baseline.unreserved

    candidates = list(enumerate_matchings(instance, guard))
    counts = [beneficiary_count(baseline, m) for m in candidates]
    best = max(counts)
    pool = [m for m, count in zip(candidates, counts) if count == best]
    trace = SmartTrace(n=config.n, beneficiary_max=best)
    logger.debug("%d of %d matchings are maximal in beneficiary assignment", len(pool), len(candidates))

    unreserved_taken = 0
    for k, patient in enumerate(baseline.baseline, start=1):
        to_u = [m for m in pool if m[patient] == u]
        if unreserved_taken < config.n and to_u:
            pool, commitment = to_u, Commitment.UNRESERVED
            unreserved_taken += 1
        else:
            own = [
                m for m in pool
                if m[patient] is not UNMATCHED
                and m[patient] != u
                and baseline.is_beneficiary(patient, m[patient])
            ]
            if own:
                pool, commitment = own, Commitment.PREFERENTIAL
            else:
                commitment = Commitment.NONE
        trace.steps.append(SmartStep(k=k, patient=patient, commitment=commitment))
        logger.debug("step 1.(%d): %r -> %s (%d matchings left)", k, patient, commitment.value, len(pool))

    committed = trace.committed_unreserved + trace.committed_preferential
    results: Dict[Matching, None] = {}
    for m in pool:
        results.setdefault(_complete(baseline, instance, {p: m[p] for p in committed}), None)
    return SmartResult(matchings=tuple(results), trace=trace)


def smart_reserve_matching_exhaustive(
    baseline: BaselineInstance, config: SmartConfig, guard: Optional[SizeGuard] = None
) -> Tuple[Matching, ...]:
    """Every smart reserve matching for ``config.n``, in a deterministic order."""
    return run_smart_reserve_exhaustive(baseline, config, guard).matchings


def _committed_graph(
    baseline: BaselineInstance,
    patients: Sequence[PatientId],
    to_unreserved: FrozenSet[PatientId],
) -> BipartiteGraph:
    """``to_unreserved`` may only take the unreserved category, everyone else only the
    preferential categories they benefit from."""
    edges = set()
    for patient in patients:
        if patient in to_unreserved:
            edges.add((patient, baseline.unreserved))
        else:
            edges.update((patient, c) for c in baseline.beneficiary_categories(patient))
    return BipartiteGraph(left=tuple(patients), right=dict(baseline.capacity), edges=frozenset(edges))


def _weighted_size(
    baseline: BaselineInstance,
    to_unreserved: FrozenSet[PatientId],
    committed: FrozenSet[PatientId],
) -> Tuple[int, FrozenSet[PatientId]]:
    """Size and matched set of an optimal assignment weighting committed patients above
    the others."""
    graph = _committed_graph(baseline, baseline.baseline, to_unreserved)
    weights = WeightedAssignment(
        {(l, r): KAPPA if l in committed else EPSILON for l, r in graph.edges}
    )
    result = solve_assignment(graph, weights)
    matched = frozenset(p for p, r in result.assignment.items() if r is not None)
    return result.size, matched


def run_smart_reserve_poly(baseline: BaselineInstance, config: SmartConfig) -> SmartResult:
    """Decide each commitment with an assignment problem instead of enumerating matchings.

    The patient under consideration is weighted like the already committed ones, so the
    decision does not depend on how the solver breaks ties.
    """
    config.validate(baseline)
    instance = lower_instance(baseline)
    n_b = max_cardinality_matching(beneficiary_graph(baseline)).size
    trace = SmartTrace(n=config.n, beneficiary_max=n_b)
    j_u: List[PatientId] = []
    j: List[PatientId] = []

    for k, patient in enumerate(baseline.baseline, start=1):
        commitment = Commitment.NONE
        committed = frozenset(j_u) | frozenset(j) | {patient}
        if len(j_u) < config.n:
            size, _ = _weighted_size(baseline, frozenset(j_u) | {patient}, committed)
            if size == n_b + len(j_u) + 1:
                commitment = Commitment.UNRESERVED
        if commitment is Commitment.NONE and baseline.beneficiary_categories(patient):
            size, matched = _weighted_size(baseline, frozenset(j_u), committed)
            if size == n_b + len(j_u) and committed - frozenset(j_u) <= matched:
                commitment = Commitment.PREFERENTIAL

        if commitment is Commitment.UNRESERVED:
            j_u.append(patient)
        elif commitment is Commitment.PREFERENTIAL:
            j.append(patient)
        trace.steps.append(SmartStep(k=k, patient=patient, commitment=commitment))
        logger.debug("step 1.(%d): %r -> %s", k, patient, commitment.value)

    committed_patients = [p for p in baseline.baseline if p in set(j_u) | set(j)]
    placement = max_cardinality_matching(
        _committed_graph(baseline, committed_patients, frozenset(j_u))
    )
    if placement.size != len(committed_patients):
        raise RuntimeError("committed patients cannot all be placed")
    matching = _complete(baseline, instance, placement.pairs)
    return SmartResult(matchings=(matching,), trace=trace)


def smart_reserve_matching_poly(baseline: BaselineInstance, config: SmartConfig) -> Matching:
    return run_smart_reserve_poly(baseline, config).matching


def smart_reserve_summary(baseline: BaselineInstance, matching: Matching) -> SmartSummary:
    return SmartSummary(
        unreserved=matching.assigned_to(baseline.unreserved),
        beneficiary_assigned=beneficiary_assigned(baseline, matching),
        matched=matching.matched_set(),
    )


def over_and_above(baseline: BaselineInstance) -> Matching:
    """Unreserved units processed after every preferential category."""
    return smart_reserve_matching_poly(baseline, SmartConfig(n=0))


def minimum_guarantee(baseline: BaselineInstance) -> Matching:
    """Unreserved units processed before every preferential category."""
    return smart_reserve_matching_poly(baseline, SmartConfig(n=baseline.unreserved_capacity))
