"""Result reports: assembly, JSON and text rendering, counterexample dumps."""

import io
import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Mapping, Optional

from rich.console import Console
from rich.table import Table

from src.collectors.instance_file import instance_to_dict, save_instance
from src.evaluators.axioms import axiom_report
from src.evaluators.equilibrium import max_cutoff_vector, min_cutoff_vector
from src.models.baseline import BaselineInstance
from src.models.reserve import EMPTY, Instance, Matching
from src.models.verification import VerificationReport


def jsonable(value: Any) -> Any:
    """Plain JSON value; the sentinel becomes null and sets become sorted lists."""
    if value is EMPTY or value is None:
        return None
    if isinstance(value, (Instance, BaselineInstance)):
        return instance_to_dict(value)
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, Mapping):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (set, frozenset)):
        return sorted((jsonable(v) for v in value), key=str)
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return value


@dataclass
class ResultReport:
    """Outcome of one mechanism run together with its supporting cutoffs."""

    mechanism: str
    instance: Instance
    matching: Matching
    metadata: Dict[str, Any] = field(default_factory=dict)
    trace: Optional[Any] = None
    extra: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        data = {
            "mechanism": self.mechanism,
            "metadata": self.metadata,
            "matching": self.matching,
            "max_cutoffs": max_cutoff_vector(self.instance, self.matching),
            "min_cutoffs": min_cutoff_vector(self.instance, self.matching),
            "axioms": axiom_report(self.instance, self.matching).to_dict(),
            **self.extra,
        }
        if self.trace is not None:
            data["trace"] = self.trace
        return jsonable(data)


def verification_to_dict(report: VerificationReport) -> Dict[str, Any]:
    data = {
        "property": report.name,
        "holds": report.holds,
        "checked": report.checked,
        "details": report.details,
    }
    if not report.holds:
        data["message"] = report.message
        data["counterexample"] = report.counterexample
    return jsonable(data)


def render_json(data: Dict[str, Any]) -> str:
    return json.dumps(jsonable(data), sort_keys=True, indent=2)


def _table(title: str, columns, rows) -> Table:
    table = Table(title=title)
    for column in columns:
        table.add_column(column)
    for row in rows:
        table.add_row(*("∅" if v is None else str(v) for v in row))
    return table


def render_text(data: Dict[str, Any]) -> str:
    """Plain tables of a result or verification document."""
    buffer = io.StringIO()
    console = Console(file=buffer, width=100, color_system=None, force_terminal=False)
    if "property" in data:
        console.print(f"property: {data['property']}")
        console.print(f"holds: {data['holds']}  checked: {data['checked']}")
        if not data["holds"]:
            console.print(f"message: {data['message']}")
            console.print_json(json.dumps(data["counterexample"], sort_keys=True))
        return buffer.getvalue()

    console.print(f"mechanism: {data['mechanism']}  {json.dumps(data['metadata'], sort_keys=True)}")
    console.print(_table("Matching", ["patient", "category"], data["matching"].items()))
    console.print(
        _table(
            "Cutoffs",
            ["category", "max", "min"],
            ((c, data["max_cutoffs"][c], data["min_cutoffs"][c]) for c in data["max_cutoffs"]),
        )
    )
    console.print(_table("Axioms", ["axiom", "holds"], data["axioms"].items()))
    if "trace" in data:
        console.print_json(json.dumps(data["trace"], sort_keys=True))
    return buffer.getvalue()


def render(data: Dict[str, Any], output_format: str = "json") -> str:
    if output_format == "text":
        return render_text(data)
    return render_json(data)


def dump_counterexample(report: VerificationReport, path: Path) -> Optional[Path]:
    """Write the failing instance as an instance file that can be re-run directly."""
    if report.holds or report.counterexample is None:
        return None
    return save_instance(report.counterexample, path)
