"""Pytest configuration and fixtures."""

import json
from pathlib import Path

import pytest

from src.baseline.lowering import lower_instance
from src.config.settings import Settings
from src.models.baseline import BaselineInstance, ReserveMode
from src.models.reserve import Instance, PriorityOrder


@pytest.fixture
def settings():
    """Default settings."""
    return Settings()


@pytest.fixture
def example1():
    """Six single-unit categories under soft reserves; two of them have no beneficiaries."""
    return BaselineInstance(
        baseline=("i1", "i2", "i3", "i4", "i5", "i6", "i7"),
        unreserved="u",
        beneficiaries={
            "c": {"i1", "i3", "i6"},
            "cp": set(),
            "cs": {"i2", "i5"},
            "ch": set(),
            "ct": {"i4", "i7"},
        },
        capacity={"c": 1, "cp": 1, "cs": 1, "ch": 1, "ct": 1, "u": 1},
        mode=ReserveMode.SOFT,
    )


@pytest.fixture
def example2():
    """Two patients under hard reserves; only i1 benefits from the preferential category."""
    return BaselineInstance(
        baseline=("i1", "i2"),
        unreserved="u",
        beneficiaries={"c": {"i1"}},
        capacity={"c": 1, "u": 1},
        mode=ReserveMode.HARD,
    )


@pytest.fixture
def example1_instance(example1):
    return lower_instance(example1)


@pytest.fixture
def example2_instance(example2):
    return lower_instance(example2)


@pytest.fixture
def single_category():
    """Three patients, one category with two units; i3 is ineligible."""
    return Instance.build(
        ["i1", "i2", "i3"],
        {"a": PriorityOrder(("i2", "i1", "i3"), 2)},
        {"a": 2},
    )


@pytest.fixture
def write_json(tmp_path):
    """Write a JSON document into the temporary directory and return its path."""

    def _write(name: str, data) -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return path

    return _write


@pytest.fixture
def example1_file(write_json):
    return write_json(
        "example1.json",
        {
            "kind": "baseline",
            "baseline": ["i1", "i2", "i3", "i4", "i5", "i6", "i7"],
            "unreserved": "u",
            "unreserved_capacity": 1,
            "mode": "soft",
            "reserves": [
                {"id": "c", "capacity": 1, "beneficiaries": ["i1", "i3", "i6"]},
                {"id": "cp", "capacity": 1, "beneficiaries": []},
                {"id": "cs", "capacity": 1, "beneficiaries": ["i2", "i5"]},
                {"id": "ch", "capacity": 1, "beneficiaries": []},
                {"id": "ct", "capacity": 1, "beneficiaries": ["i4", "i7"]},
            ],
        },
    )


@pytest.fixture
def example2_file(write_json):
    return write_json(
        "example2.json",
        {
            "baseline": ["i1", "i2"],
            "unreserved": "u",
            "unreserved_capacity": 1,
            "mode": "hard",
            "reserves": [{"id": "c", "capacity": 1, "beneficiaries": ["i1"]}],
        },
    )


@pytest.fixture
def raw_file(write_json):
    """Raw form of the hard-reserve two-patient instance."""
    return write_json(
        "raw.json",
        {
            "kind": "raw",
            "patients": ["i1", "i2"],
            "categories": [
                {"id": "c", "capacity": 1, "priority": ["i1", "i2"], "eligible_count": 1},
                {"id": "u", "capacity": 1, "priority": ["i1", "i2"], "eligible_count": 2},
            ],
        },
    )


@pytest.fixture
def shared_reserve():
    """Two beneficiaries competing for one preferential unit, one unreserved unit."""
    return BaselineInstance(
        baseline=("i1", "i2", "i3"),
        unreserved="u",
        beneficiaries={"c": {"i1", "i2"}},
        capacity={"c": 1, "u": 1},
        mode=ReserveMode.SOFT,
    )
