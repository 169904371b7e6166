"""Property checks that compare the mechanisms against exhaustive oracles."""

import logging
import random
from dataclasses import dataclass
from typing import Callable, Dict, Optional

from src.baseline.comparative_statics import check_beneficiary_monotonicity, check_cutoff_bounds
from src.baseline.lowering import is_maximal_in_beneficiary_assignment, lower_instance
from src.baseline.smart_reserve import (
    smart_reserve_matching_exhaustive,
    smart_reserve_matching_poly,
    smart_reserve_summary,
)
from src.config.settings import Settings
from src.evaluators.axioms import axiom_report, satisfies_axioms
from src.evaluators.equilibrium import (
    compare_cutoffs,
    count_equilibrium_cutoffs,
    enumerate_equilibrium_cutoffs,
    max_cutoff_vector,
)
from src.mechanisms.deferred_acceptance import (
    deferred_acceptance,
    enumerate_da_induced,
    profile_from_precedence,
)
from src.mechanisms.sequential import (
    adjacent_swaps,
    all_precedence_orders,
    sequential_reserve_matching,
)
from src.models.baseline import BaselineInstance, ReserveMode, SmartConfig
from src.models.reserve import UNMATCHED, Instance, PreferenceProfile
from src.models.verification import VerificationReport
from src.oracle.brute_force import (
    axiom_satisfying_set,
    enumerate_beneficiary_maximal_admissible,
    equilibrium_supported_set,
    supporting_cutoffs,
)
from src.oracle.generators import random_baseline_instance, random_instance
from src.oracle.guard import SizeGuard

logger = logging.getLogger(__name__)


def _describe(matchings) -> list:
    """JSON-ready view of matchings, unmatched patients as None."""
    return sorted(
        ({str(p): None if c is UNMATCHED else c for p, c in m.items()} for m in matchings),
        key=repr,
    )


def random_profile(instance: Instance, rng: random.Random) -> PreferenceProfile:
    """Each patient ranks their eligible categories in a random order."""
    prefs = {}
    for patient in instance.patients:
        eligible = [c for c in instance.categories if instance.priority[c].is_eligible(patient)]
        rng.shuffle(eligible)
        prefs[patient] = tuple(eligible)
    return PreferenceProfile(prefs)


def check_mechanism_axioms(instance: Instance, rng: Optional[random.Random] = None) -> VerificationReport:
    """Sequential matchings under every precedence order and deferred acceptance under a random
    profile satisfy the axioms."""
    rng = rng or random.Random(0)
    report = VerificationReport(name="axioms")
    outcomes = [
        (f"sequential {list(p.sequence)}", sequential_reserve_matching(instance, p))
        for p in all_precedence_orders(instance)
    ]
    outcomes.append(("deferred acceptance", deferred_acceptance(instance, random_profile(instance, rng))))
    for label, matching in outcomes:
        report.checked += 1
        axioms = axiom_report(instance, matching)
        if not axioms.all_hold:
            return report.fail(
                f"{label} violates the axioms",
                counterexample=instance,
                matching=_describe([matching]),
                axioms=axioms.to_dict(),
            )
    return report


def check_cutoff_equilibrium(instance: Instance, guard: Optional[SizeGuard] = None) -> VerificationReport:
    """Axiom-satisfying matchings are exactly the cutoff-equilibrium matchings."""
    report = VerificationReport(name="cutoff-equilibrium", checked=1)
    admissible = axiom_satisfying_set(instance, guard)
    supported = equilibrium_supported_set(instance, guard)
    if admissible != supported:
        report.fail(
            "axiom-satisfying and cutoff-supported matchings differ",
            counterexample=instance,
            only_axioms=_describe(admissible - supported),
            only_supported=_describe(supported - admissible),
        )
    return report


def check_cutoff_intervals(instance: Instance, guard: Optional[SizeGuard] = None) -> VerificationReport:
    """Supporting cutoffs of each admissible matching form the product of per-category intervals."""
    report = VerificationReport(name="cutoff-intervals")
    for matching in sorted(axiom_satisfying_set(instance, guard), key=repr):
        report.checked += 1
        exhaustive = supporting_cutoffs(instance, matching, guard)
        intervals = frozenset(enumerate_equilibrium_cutoffs(instance, matching))
        if exhaustive != intervals or count_equilibrium_cutoffs(instance, matching) != len(intervals):
            return report.fail(
                "supporting cutoffs differ from the interval product",
                counterexample=instance,
                matching=_describe([matching]),
                exhaustive=len(exhaustive),
                intervals=len(intervals),
            )
    return report


def check_da_induced(instance: Instance, guard: Optional[SizeGuard] = None) -> VerificationReport:
    """Axiom-satisfying matchings are exactly the deferred-acceptance outcomes."""
    report = VerificationReport(name="da-induced", checked=1)
    admissible = axiom_satisfying_set(instance, guard)
    induced = frozenset(enumerate_da_induced(instance, guard))
    if admissible != induced:
        report.fail(
            "axiom-satisfying and DA-induced matchings differ",
            counterexample=instance,
            only_axioms=_describe(admissible - induced),
            only_induced=_describe(induced - admissible),
        )
    return report


def check_precedence_da(instance: Instance) -> VerificationReport:
    """Sequential matching equals deferred acceptance under the precedence-derived profile."""
    report = VerificationReport(name="precedence-da")
    for precedence in all_precedence_orders(instance):
        report.checked += 1
        sequential = sequential_reserve_matching(instance, precedence)
        da = deferred_acceptance(instance, profile_from_precedence(instance, precedence))
        if sequential != da:
            return report.fail(
                f"sequential and DA differ under {list(precedence.sequence)}",
                counterexample=instance,
                sequential=_describe([sequential]),
                deferred_acceptance=_describe([da]),
            )
    return report


def check_cutoff_monotonicity(instance: Instance) -> VerificationReport:
    """Moving a category one step earlier never lowers its maximum cutoff."""
    report = VerificationReport(name="cutoff-monotonicity")
    for precedence in all_precedence_orders(instance):
        before = max_cutoff_vector(instance, sequential_reserve_matching(instance, precedence))
        for category, swapped in adjacent_swaps(precedence):
            report.checked += 1
            after = max_cutoff_vector(instance, sequential_reserve_matching(instance, swapped))
            if compare_cutoffs(instance.priority[category], after[category], before[category]) < 0:
                return report.fail(
                    f"{category!r} became less selective when processed earlier",
                    counterexample=instance,
                    precedence=list(precedence.sequence),
                    swapped=list(swapped.sequence),
                )
    return report


def check_beneficiary_monotonicity_all(baseline: BaselineInstance) -> VerificationReport:
    """Beneficiary monotonicity for every precedence order and every preferential swap."""
    report = VerificationReport(name="beneficiary-monotonicity")
    instance = lower_instance(baseline)
    for precedence in all_precedence_orders(instance):
        for category, swapped in adjacent_swaps(precedence):
            if category not in baseline.preferential:
                continue
            single = check_beneficiary_monotonicity(baseline, category, precedence, swapped)
            report.merge(single)
            if not report.holds:
                report.details.update(precedence=list(precedence.sequence), swapped=list(swapped.sequence))
                return report
    return report


def check_smart_invariance(baseline: BaselineInstance, guard: Optional[SizeGuard] = None) -> VerificationReport:
    """Smart matchings with the same ``n`` share their summary sets, and the polynomial
    procedure returns one of them."""
    report = VerificationReport(name="smart-invariance")
    for n in range(baseline.unreserved_capacity + 1):
        report.checked += 1
        config = SmartConfig(n=n)
        exhaustive = smart_reserve_matching_exhaustive(baseline, config, guard)
        poly = smart_reserve_matching_poly(baseline, config)
        summaries = {smart_reserve_summary(baseline, m) for m in exhaustive}
        if len(summaries) != 1:
            return report.fail(f"smart matchings with n={n} disagree", counterexample=baseline, n=n,
                               matchings=_describe(exhaustive))
        if smart_reserve_summary(baseline, poly) not in summaries or poly not in exhaustive:
            return report.fail(f"polynomial smart matching with n={n} is not a smart matching",
                               counterexample=baseline, n=n, poly=_describe([poly]),
                               matchings=_describe(exhaustive))
    return report


def check_smart_properties(baseline: BaselineInstance, guard: Optional[SizeGuard] = None) -> VerificationReport:
    """Every smart matching satisfies the axioms and is maximal in beneficiary assignment."""
    report = VerificationReport(name="smart-properties")
    instance = lower_instance(baseline)
    for n in range(baseline.unreserved_capacity + 1):
        for matching in smart_reserve_matching_exhaustive(baseline, SmartConfig(n=n), guard):
            report.checked += 1
            if not satisfies_axioms(instance, matching):
                return report.fail(f"smart matching with n={n} violates the axioms",
                                   counterexample=baseline, n=n, matching=_describe([matching]),
                                   axioms=axiom_report(instance, matching).to_dict())
            if not is_maximal_in_beneficiary_assignment(baseline, matching):
                return report.fail(f"smart matching with n={n} is not beneficiary-maximal",
                                   counterexample=baseline, n=n, matching=_describe([matching]))
    return report


def check_smart_cutoff_bounds(baseline: BaselineInstance, guard: Optional[SizeGuard] = None) -> VerificationReport:
    """Cutoff bounds for every admissible beneficiary-maximal matching."""
    report = VerificationReport(name="smart-cutoff-bounds")
    for matching in sorted(enumerate_beneficiary_maximal_admissible(baseline, guard), key=repr):
        report.merge(check_cutoff_bounds(baseline, matching))
        if not report.holds:
            report.details.update(matching=_describe([matching]))
            return report
    return report


@dataclass(frozen=True)
class Verifier:
    """How a named property draws its instances and checks one of them.

    ``categories`` names the setting bounding the categories of its random instances.
    """

    baseline: bool
    check: Callable[[object, Settings, random.Random], VerificationReport]
    mode: Optional[ReserveMode] = None
    for_profiles: bool = False
    categories: str = "random_max_categories"


VERIFIERS: Dict[str, Verifier] = {
    "axioms": Verifier(False, lambda inst, s, rng: check_mechanism_axioms(inst, rng)),
    "cutoff-equilibrium": Verifier(
        False, lambda inst, s, rng: check_cutoff_equilibrium(inst, s.size_guard())
    ),
    "cutoff-intervals": Verifier(
        False, lambda inst, s, rng: check_cutoff_intervals(inst, s.size_guard())
    ),
    "da-induced": Verifier(
        False, lambda inst, s, rng: check_da_induced(inst, s.size_guard(for_profiles=True)),
        for_profiles=True,
    ),
    "precedence-da": Verifier(
        False, lambda inst, s, rng: check_precedence_da(inst), categories="precedence_max_categories"
    ),
    "cutoff-monotonicity": Verifier(
        False, lambda inst, s, rng: check_cutoff_monotonicity(inst), categories="precedence_max_categories"
    ),
    "beneficiary-monotonicity": Verifier(
        True,
        lambda b, s, rng: check_beneficiary_monotonicity_all(b),
        mode=ReserveMode.SOFT,
        categories="baseline_max_categories",
    ),
    "smart-invariance": Verifier(True, lambda b, s, rng: check_smart_invariance(b, s.size_guard())),
    "smart-properties": Verifier(True, lambda b, s, rng: check_smart_properties(b, s.size_guard())),
    "smart-cutoff-bounds": Verifier(
        True, lambda b, s, rng: check_smart_cutoff_bounds(b, s.size_guard())
    ),
}

# Short names accepted wherever a property name is.
ALIASES: Dict[str, str] = {
    "theorem1": "cutoff-equilibrium",
    "theorem2": "da-induced",
    "prop1": "precedence-da",
    "prop2": "cutoff-monotonicity",
    "prop3": "beneficiary-monotonicity",
    "lemma2": "smart-invariance",
    "prop4": "smart-properties",
    "theorem3": "smart-cutoff-bounds",
}

PROPERTY_NAMES = sorted(VERIFIERS) + sorted(ALIASES)


def resolve_property(name: str) -> str:
    """Canonical property name for ``name`` or one of its aliases."""
    canonical = ALIASES.get(name, name)
    if canonical not in VERIFIERS:
        raise KeyError(f"unknown property {name!r}")
    return canonical


def run_verification(name: str, settings: Optional[Settings] = None, seed: int = 0) -> VerificationReport:
    """Check ``name`` on ``settings.random_instances`` seeded random instances.

    Stops at the first counterexample.
    """
    name = resolve_property(name)
    settings = settings or Settings()
    verifier = VERIFIERS[name]
    max_categories = getattr(settings, verifier.categories)
    rng = random.Random(seed)
    report = VerificationReport(name=name, details={"seed": seed})

    for index in range(settings.random_instances):
        if verifier.baseline:
            instance = random_baseline_instance(
                rng,
                mode=verifier.mode,
                disjoint=True,
                max_patients=settings.random_max_patients,
                max_categories=max_categories,
                max_units=settings.random_max_units,
            )
        else:
            instance = random_instance(
                rng,
                max_patients=settings.random_max_patients,
                max_categories=(
                    min(max_categories, settings.max_categories_profiles)
                    if verifier.for_profiles
                    else max_categories
                ),
                max_units=settings.random_max_units,
            )
        report.merge(verifier.check(instance, settings, rng))
        if not report.holds:
            report.details["instance_index"] = index
            logger.info("%s: counterexample at instance %d", name, index)
            return report
        if (index + 1) % 50 == 0:
            logger.info("%s: %d instances checked", name, index + 1)
    logger.info("%s holds on %d instances (%d checks)", name, settings.random_instances, report.checked)
    return report
