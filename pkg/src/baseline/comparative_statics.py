"""Comparative statics of sequential and smart reserve matchings on baseline instances."""

import logging

from src.baseline.lowering import is_maximal_in_beneficiary_assignment, lower_instance
from src.baseline.smart_reserve import smart_reserve_matching_poly
from src.evaluators.axioms import pareto_dominates, satisfies_axioms
from src.evaluators.equilibrium import compare_cutoffs, max_cutoff_vector
from src.mechanisms.sequential import adjacent_swap, sequential_reserve_matching, validate_precedence
from src.models.baseline import BaselineInstance, ReserveMode, SmartConfig
from src.models.errors import NotAdjacent, PreconditionViolated
from src.models.reserve import CategoryId, Instance, Matching, PrecedenceOrder
from src.models.verification import VerificationReport

logger = logging.getLogger(__name__)

MAX_MONOTONE_CATEGORIES = 5


def _names(patients) -> list:
    return sorted(map(str, patients))


def check_beneficiary_monotonicity(
    baseline: BaselineInstance,
    category: CategoryId,
    precedence: PrecedenceOrder,
    swapped: PrecedenceOrder,
    enforce_category_limit: bool = True,
) -> VerificationReport:
    """Moving a preferential category one step earlier never adds matched beneficiaries of it.

    Requires soft reserves, disjoint beneficiary sets and, unless lifted, at most five
    categories; ``swapped`` must move ``category`` ahead of its immediate predecessor.
    """
    baseline.validate()
    if baseline.mode is not ReserveMode.SOFT:
        raise PreconditionViolated("beneficiary monotonicity is stated for soft reserves only")
    if not baseline.has_disjoint_beneficiaries():
        raise PreconditionViolated("a patient benefits from more than one preferential category")
    if category not in baseline.preferential:
        raise PreconditionViolated(f"{category!r} is not a preferential category")
    if enforce_category_limit and len(baseline.categories) > MAX_MONOTONE_CATEGORIES:
        raise PreconditionViolated(
            f"{len(baseline.categories)} categories exceed the limit of {MAX_MONOTONE_CATEGORIES}"
        )

    instance = lower_instance(baseline)
    validate_precedence(instance, precedence)
    k = precedence.position(category)
    if k == 0:
        raise NotAdjacent(f"{category!r} is already processed first")
    if adjacent_swap(precedence, category, precedence.sequence[k - 1]) != swapped:
        raise NotAdjacent("swapped order is not the adjacent swap moving the category earlier")

    members = baseline.beneficiaries[category]
    before = sequential_reserve_matching(instance, precedence).matched_set(members)
    after = sequential_reserve_matching(instance, swapped).matched_set(members)
    report = VerificationReport(
        name="beneficiary-monotonicity",
        checked=1,
        details={
            "category": category,
            "matched_before": _names(before),
            "matched_after": _names(after),
        },
    )
    if not after <= before:
        report.fail(
            f"processing {category!r} earlier matched more of its beneficiaries",
            counterexample=baseline,
        )
    return report


def check_cutoff_bounds(baseline: BaselineInstance, matching: Matching) -> VerificationReport:
    """The unreserved maximum cutoff of ``matching`` lies between those of the two extreme
    smart reserve matchings.

    ``matching`` must satisfy the axioms and be maximal in beneficiary assignment.
    """
    baseline.validate()
    if not baseline.has_disjoint_beneficiaries():
        raise PreconditionViolated("a patient benefits from more than one preferential category")
    instance = lower_instance(baseline)
    if not satisfies_axioms(instance, matching):
        raise PreconditionViolated("matching does not satisfy the axioms")
    if not is_maximal_in_beneficiary_assignment(baseline, matching):
        raise PreconditionViolated("matching is not maximal in beneficiary assignment")

    u = baseline.unreserved
    order = instance.priority[u]
    first = max_cutoff_vector(
        instance, smart_reserve_matching_poly(baseline, SmartConfig(n=baseline.unreserved_capacity))
    )[u]
    last = max_cutoff_vector(instance, smart_reserve_matching_poly(baseline, SmartConfig(n=0)))[u]
    own = max_cutoff_vector(instance, matching)[u]

    report = VerificationReport(
        name="smart-cutoff-bounds",
        checked=1,
        details={"unreserved_first": first, "matching": own, "unreserved_last": last},
    )
    if compare_cutoffs(order, first, own) < 0:
        report.fail("matching is more selective than the unreserved-first smart matching", counterexample=baseline)
    elif compare_cutoffs(order, own, last) < 0:
        report.fail("matching is less selective than the unreserved-last smart matching", counterexample=baseline)
    return report


def check_sequential_dominance(
    instance: Instance, precedence: PrecedenceOrder, other: PrecedenceOrder
) -> VerificationReport:
    """Report whether the sequential matching under ``other`` Pareto dominates the one under
    ``precedence``."""
    first = sequential_reserve_matching(instance, precedence)
    second = sequential_reserve_matching(instance, other)
    report = VerificationReport(
        name="sequential-dominance",
        checked=1,
        details={
            "matched": _names(first.matched_set()),
            "matched_other": _names(second.matched_set()),
        },
    )
    if not pareto_dominates(second, first):
        report.fail("the other order does not match a strict superset of patients")
    logger.debug("sequential dominance: %s", report.details)
    return report
