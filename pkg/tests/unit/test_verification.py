"""Property suites run against seeded random instances."""

import random
from dataclasses import replace

import pytest

from src.config.settings import Settings
from src.models.reserve import Instance, PriorityOrder
from src.oracle.generators import random_instance
from src.oracle.verification import (
    ALIASES,
    PROPERTY_NAMES,
    VERIFIERS,
    check_cutoff_equilibrium,
    check_cutoff_intervals,
    check_smart_invariance,
    resolve_property,
    run_verification,
)

PROPERTIES = sorted(VERIFIERS)


class TestPropertySuites:
    """Test cases for the named property checks."""

    @pytest.mark.unit
    def test_property_names(self):
        """Every property is registered under a descriptive name."""
        assert PROPERTIES == [
            "axioms",
            "beneficiary-monotonicity",
            "cutoff-equilibrium",
            "cutoff-intervals",
            "cutoff-monotonicity",
            "da-induced",
            "precedence-da",
            "smart-cutoff-bounds",
            "smart-invariance",
            "smart-properties",
        ]

    @pytest.mark.unit
    def test_aliases(self):
        """Short names resolve to the registered properties."""
        assert resolve_property("theorem1") == "cutoff-equilibrium"
        assert resolve_property("prop3") == "beneficiary-monotonicity"
        assert resolve_property("axioms") == "axioms"
        assert set(ALIASES.values()) <= set(VERIFIERS)
        assert set(PROPERTY_NAMES) == set(VERIFIERS) | set(ALIASES)

    @pytest.mark.unit
    def test_unknown_property(self):
        """Unknown names raise ``KeyError``."""
        with pytest.raises(KeyError):
            run_verification("no-such-property")
        with pytest.raises(KeyError):
            resolve_property("theorem9")

    @pytest.mark.unit
    def test_alias_report_uses_the_registered_name(self):
        """Runs requested by alias report the property's registered name."""
        report = run_verification("prop1", Settings(random_instances=3), seed=1)
        assert report.name == "precedence-da"
        assert report.holds

    @pytest.mark.unit
    def test_empty_category_is_a_counterexample(self):
        """An eligible patient left out of an unfunded category breaks the equivalence."""
        # Given
        instance = Instance.build(["i1"], {"a": PriorityOrder(("i1",), 1)}, {"a": 0})

        # When
        report = check_cutoff_equilibrium(instance)

        # Then
        assert not report.holds
        assert report.details["only_axioms"] == [{"i1": None}]

    @pytest.mark.unit
    def test_cutoff_intervals_with_unfunded_categories(self):
        """Interval products match exhaustive search when some categories have no units."""
        for seed in range(40):
            instance = random_instance(random.Random(seed), allow_empty_categories=True)
            report = check_cutoff_intervals(instance)
            assert report.holds, (seed, report.message)

    @pytest.mark.unit
    def test_smart_invariance_on_example(self, example2):
        """Both values of ``n`` agree on the two-patient example."""
        report = check_smart_invariance(example2)
        assert report.holds
        assert report.checked == 2

    @pytest.mark.unit
    def test_precedence_suites_reach_four_categories(self, monkeypatch):
        """Precedence suites draw instances with up to four categories."""
        # Given
        seen = []
        original = VERIFIERS["precedence-da"].check

        def record(instance, settings, rng):
            seen.append(len(instance.categories))
            return original(instance, settings, rng)

        monkeypatch.setitem(VERIFIERS, "precedence-da", replace(VERIFIERS["precedence-da"], check=record))

        # When
        report = run_verification("precedence-da", Settings(random_instances=60), seed=3)

        # Then
        assert report.holds
        assert max(seen) == 4

    @pytest.mark.integration
    @pytest.mark.parametrize("name", PROPERTIES)
    def test_short_run(self, name):
        """Each property holds on a short seeded run."""
        report = run_verification(name, Settings(random_instances=15), seed=42)
        assert report.holds, report.message
        assert report.details["seed"] == 42
        assert report.checked > 0

    @pytest.mark.slow
    @pytest.mark.parametrize("name", PROPERTIES)
    def test_full_run(self, name):
        """Each property holds on the full default run."""
        report = run_verification(name, Settings(), seed=0)
        assert report.holds, report.message
