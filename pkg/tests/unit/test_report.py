"""Unit tests for result reports."""

import json

import pytest

from src.collectors.instance_file import load_instance
from src.generators.report import (
    ResultReport,
    dump_counterexample,
    jsonable,
    render,
    verification_to_dict,
)
from src.models.reserve import EMPTY, UNMATCHED, Matching
from src.models.verification import VerificationReport


@pytest.fixture
def efficient_report(example2_instance):
    return ResultReport(
        mechanism="sequential",
        instance=example2_instance,
        matching=Matching({"i1": "c", "i2": "u"}),
        metadata={"precedence": ["c", "u"]},
    )


class TestResultReport:
    """Test cases for result documents."""

    @pytest.mark.unit
    def test_to_dict(self, efficient_report):
        """Reports carry the matching, both cutoff vectors and the axiom flags."""
        # When
        data = efficient_report.to_dict()

        # Then
        assert data["matching"] == {"i1": "c", "i2": "u"}
        assert data["max_cutoffs"] == {"c": "i1", "u": "i2"}
        assert data["min_cutoffs"] == {"c": None, "u": None}
        assert all(data["axioms"].values())
        assert "trace" not in data

    @pytest.mark.unit
    def test_jsonable(self):
        """Sentinels become null and sets become sorted lists."""
        assert jsonable({"a": EMPTY, "b": frozenset({"y", "x"}), "c": ("p", UNMATCHED)}) == {
            "a": None,
            "b": ["x", "y"],
            "c": ["p", None],
        }

    @pytest.mark.unit
    def test_render_formats(self, efficient_report):
        """JSON rendering round-trips; text rendering has tables."""
        data = efficient_report.to_dict()
        assert json.loads(render(data, "json")) == data
        text = render(data, "text")
        assert "Matching" in text
        assert "Cutoffs" in text


class TestVerificationDocuments:
    """Test cases for verification documents and counterexample dumps."""

    @pytest.mark.unit
    def test_holding_report(self):
        """A holding report has no message or counterexample."""
        report = VerificationReport(name="axioms", checked=3)
        assert verification_to_dict(report) == {"property": "axioms", "holds": True, "checked": 3, "details": {}}

    @pytest.mark.unit
    def test_failing_report_dumps_instance(self, tmp_path, example2):
        """A counterexample is dumped as a loadable instance file."""
        # Given
        report = VerificationReport(name="smart-properties", checked=1).fail("broken", counterexample=example2)

        # When
        data = verification_to_dict(report)
        path = dump_counterexample(report, tmp_path / "counterexample.json")

        # Then
        assert data["message"] == "broken"
        assert data["counterexample"]["kind"] == "baseline"
        assert load_instance(path) == example2
        assert "holds: False" in render(data, "text")

    @pytest.mark.unit
    def test_nothing_to_dump(self, tmp_path):
        """Holding reports dump nothing."""
        assert dump_counterexample(VerificationReport(name="axioms"), tmp_path / "x.json") is None
