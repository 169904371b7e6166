"""Unit tests for baseline instances and their lowering."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.baseline.lowering import (
    beneficiary_assigned,
    beneficiary_count,
    is_maximal_in_beneficiary_assignment,
    lower_instance,
    max_beneficiary_count,
)
from src.evaluators.axioms import validate_instance
from src.mechanisms.sequential import all_precedence_orders, sequential_reserve_matching
from src.models.baseline import BaselineInstance, ReserveMode, SmartConfig
from src.models.errors import InvalidBaseline, InvalidSmartConfig
from src.models.reserve import EMPTY, UNMATCHED, Matching
from src.oracle.brute_force import axiom_satisfying_set
from src.oracle.generators import random_baseline_instance


class TestBaselineInstance:
    """Test cases for baseline instance structure."""

    @pytest.mark.unit
    def test_derived_sets(self, example1):
        """Categories, beneficiary lookups and totals follow the declaration."""
        assert example1.categories == ("c", "cp", "cs", "ch", "ct", "u")
        assert example1.general_community == frozenset()
        assert example1.beneficiary_categories("i5") == ("cs",)
        assert example1.is_beneficiary("i5", "u")
        assert example1.has_disjoint_beneficiaries()
        assert example1.total_units == 6

    @pytest.mark.unit
    def test_general_community(self, example2):
        """Patients with no preferential category form the general community."""
        assert example2.general_community == {"i2"}

    @pytest.mark.unit
    def test_unknown_beneficiary(self):
        """Beneficiaries must appear in the baseline order."""
        baseline = BaselineInstance(("i1",), "u", {"c": {"i9"}}, {"c": 1, "u": 1})
        with pytest.raises(InvalidBaseline):
            baseline.validate()

    @pytest.mark.unit
    def test_missing_capacity(self):
        """Every category needs a capacity."""
        baseline = BaselineInstance(("i1",), "u", {"c": {"i1"}}, {"u": 1})
        with pytest.raises(InvalidBaseline):
            baseline.validate()

    @pytest.mark.unit
    def test_smart_config_range(self, example2):
        """``n`` runs from zero to the unreserved capacity."""
        assert SmartConfig(n=1).validate(example2).n == 1
        with pytest.raises(InvalidSmartConfig):
            SmartConfig(n=2).validate(example2)
        with pytest.raises(InvalidSmartConfig):
            SmartConfig(n=-1).validate(example2)


class TestLowering:
    """Test cases for the per-category priority construction."""

    @pytest.mark.unit
    def test_hard_reserves(self, example2):
        """Hard reserves admit beneficiaries only."""
        # When
        instance = lower_instance(example2)

        # Then
        assert instance.priority["c"].as_sequence() == ("i1", EMPTY, "i2")
        assert instance.priority["u"].as_sequence() == ("i1", "i2", EMPTY)
        assert validate_instance(instance) is instance

    @pytest.mark.unit
    def test_soft_reserves(self, example1):
        """Soft reserves move beneficiaries to the front and admit everyone."""
        # When
        instance = lower_instance(example1)

        # Then
        assert instance.priority["c"].as_sequence() == ("i1", "i3", "i6", "i2", "i4", "i5", "i7", EMPTY)
        assert instance.priority["cp"].as_sequence() == example1.baseline + (EMPTY,)
        assert instance.categories == example1.categories

    @pytest.mark.unit
    def test_hard_reserve_without_beneficiaries(self):
        """A hard reserve without beneficiaries admits nobody."""
        baseline = BaselineInstance(("i1", "i2"), "u", {"c": set()}, {"c": 1, "u": 1}, ReserveMode.HARD)
        assert lower_instance(baseline).priority["c"].eligible == ()

    @pytest.mark.unit
    @settings(max_examples=60, deadline=None)
    @given(seed=st.integers(0, 10_000))
    def test_soft_reserves_match_units_or_patients(self, seed):
        """Under soft reserves every admissible matching fills min(q, |I|) places."""
        # Given
        baseline = random_baseline_instance(random.Random(seed), mode=ReserveMode.SOFT, disjoint=False)
        instance = lower_instance(baseline)
        expected = min(baseline.total_units, len(baseline.baseline))

        # Then
        for matching in axiom_satisfying_set(instance):
            assert len(matching.matched_set()) == expected
        for precedence in all_precedence_orders(instance):
            assert len(sequential_reserve_matching(instance, precedence).matched_set()) == expected


class TestBeneficiaryAssignment:
    """Test cases for beneficiary counts and maximality."""

    @pytest.mark.unit
    def test_counts(self, example2):
        """Only beneficiaries placed in their own category count."""
        # Given
        efficient = Matching({"i1": "c", "i2": "u"})
        myopic = Matching({"i1": "u", "i2": UNMATCHED})

        # Then
        assert beneficiary_assigned(example2, efficient) == {"i1"}
        assert beneficiary_count(example2, myopic) == 0
        assert max_beneficiary_count(example2) == 1
        assert is_maximal_in_beneficiary_assignment(example2, efficient)
        assert not is_maximal_in_beneficiary_assignment(example2, myopic)

    @pytest.mark.unit
    def test_non_beneficiary_in_preferential_category_does_not_count(self, example1):
        """A non-beneficiary holding a preferential unit is not counted."""
        matching = Matching({p: UNMATCHED for p in example1.baseline}).with_assignment("i2", "c")
        assert beneficiary_count(example1, matching) == 0

    @pytest.mark.unit
    def test_max_count(self, example1):
        """Three beneficiaries can be placed at once in the six-category example."""
        assert max_beneficiary_count(example1) == 3

    @pytest.mark.unit
    def test_no_beneficiaries_makes_every_matching_maximal(self):
        """With no beneficiaries every matching is trivially maximal."""
        baseline = BaselineInstance(("i1", "i2"), "u", {"c": set()}, {"c": 1, "u": 1})
        assert is_maximal_in_beneficiary_assignment(baseline, Matching({"i1": UNMATCHED, "i2": UNMATCHED}))
