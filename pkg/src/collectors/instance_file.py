"""Instance and preference-profile files: JSON parsing, validation and serialization."""

import json
import logging
from pathlib import Path
from typing import Annotated, Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, ValidationError

from src.baseline.lowering import lower_instance
from src.evaluators.axioms import validate_instance
from src.models.baseline import BaselineInstance, ReserveMode
from src.models.errors import InvalidBaseline, InvalidInstance, InvalidPrecedence, InvalidProfile
from src.models.reserve import Instance, PrecedenceOrder, PreferenceProfile, PriorityOrder

logger = logging.getLogger(__name__)

Identifier = Union[int, str]
AnyInstance = Union[Instance, BaselineInstance]


class CategorySpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    id: Identifier
    capacity: int
    priority: List[Identifier]
    eligible_count: int


class RawInstanceFile(BaseModel):
    """Explicit categories, each with its own priority list and eligibility cut."""

    model_config = ConfigDict(extra="forbid")

    kind: Literal["raw"] = "raw"
    patients: List[Identifier]
    categories: List[CategorySpec]
    total_units: Optional[int] = None


class ReserveSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    id: Identifier
    capacity: int
    beneficiaries: List[Identifier] = Field(default_factory=list)


class BaselineInstanceFile(BaseModel):
    """Baseline priority order, one unreserved category and preferential reserves."""

    model_config = ConfigDict(extra="forbid")

    kind: Literal["baseline"] = "baseline"
    baseline: List[Identifier]
    unreserved: Identifier
    unreserved_capacity: int
    mode: ReserveMode = ReserveMode.SOFT
    reserves: List[ReserveSpec] = Field(default_factory=list)


InstanceFile = Annotated[
    Union[RawInstanceFile, BaselineInstanceFile], Field(discriminator="kind")
]
_INSTANCE_ADAPTER = TypeAdapter(InstanceFile)


class ProfileFile(BaseModel):
    model_config = ConfigDict(extra="forbid")

    preferences: Dict[str, List[Identifier]]


def _raw_to_instance(doc: RawInstanceFile) -> Instance:
    ids = [c.id for c in doc.categories]
    if len(set(ids)) != len(ids):
        raise InvalidInstance("duplicate category ids")
    orders = {c.id: PriorityOrder(tuple(c.priority), c.eligible_count) for c in doc.categories}
    capacity = {c.id: c.capacity for c in doc.categories}
    return validate_instance(Instance.build(doc.patients, orders, capacity, doc.total_units))


def _baseline_to_instance(doc: BaselineInstanceFile) -> BaselineInstance:
    ids = [r.id for r in doc.reserves]
    if len(set(ids)) != len(ids):
        raise InvalidBaseline("duplicate reserve ids")
    capacity = {r.id: r.capacity for r in doc.reserves}
    capacity[doc.unreserved] = doc.unreserved_capacity
    return BaselineInstance(
        baseline=tuple(doc.baseline),
        unreserved=doc.unreserved,
        beneficiaries={r.id: frozenset(r.beneficiaries) for r in doc.reserves},
        capacity=capacity,
        mode=doc.mode,
    ).validate()


def parse_instance(data: Dict[str, Any]) -> AnyInstance:
    """Validate a decoded instance document and build the domain object.

    A missing ``kind`` is inferred from the presence of a ``baseline`` key.
    """
    if not isinstance(data, dict):
        raise InvalidInstance("instance document must be a JSON object")
    if "kind" not in data:
        data = {**data, "kind": "baseline" if "baseline" in data else "raw"}
    try:
        doc = _INSTANCE_ADAPTER.validate_python(data)
    except ValidationError as e:
        raise InvalidInstance(f"malformed instance file: {e}") from e
    if isinstance(doc, BaselineInstanceFile):
        return _baseline_to_instance(doc)
    return _raw_to_instance(doc)


def _read_json(path: Path) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise InvalidInstance(f"{path}: invalid JSON: {e}") from e
    except OSError as e:
        raise InvalidInstance(f"{path}: cannot read file: {e}") from e


def load_instance(path: Path) -> AnyInstance:
    instance = parse_instance(_read_json(Path(path)))
    logger.debug("loaded %s instance from %s", type(instance).__name__, path)
    return instance


def as_instance(instance: AnyInstance) -> Instance:
    """General reserve instance, lowering baseline instances."""
    if isinstance(instance, BaselineInstance):
        return lower_instance(instance)
    return instance


def instance_to_dict(instance: AnyInstance) -> Dict[str, Any]:
    """Instance file document; parsing it back yields an equal instance."""
    if isinstance(instance, BaselineInstance):
        return {
            "kind": "baseline",
            "baseline": list(instance.baseline),
            "unreserved": instance.unreserved,
            "unreserved_capacity": instance.unreserved_capacity,
            "mode": instance.mode.value,
            "reserves": [
                {
                    "id": c,
                    "capacity": instance.capacity[c],
                    "beneficiaries": [p for p in instance.baseline if p in members],
                }
                for c, members in instance.beneficiaries.items()
            ],
        }
    return {
        "kind": "raw",
        "patients": list(instance.patients),
        "categories": [
            {
                "id": c,
                "capacity": instance.capacity[c],
                "priority": list(instance.priority[c].ranking),
                "eligible_count": instance.priority[c].eligible_count,
            }
            for c in instance.categories
        ],
        "total_units": instance.total_units,
    }


def save_instance(instance: AnyInstance, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(instance_to_dict(instance), sort_keys=True, indent=2) + "\n", encoding="utf-8")
    return path


def _category_lookup(instance: Instance) -> Dict[str, Any]:
    return {str(c): c for c in instance.categories}


def load_profile(path: Path, instance: Instance) -> PreferenceProfile:
    """Preference file ``{"preferences": {patient: [category, ...]}}``; patient keys are
    matched through their string form."""
    try:
        doc = ProfileFile.model_validate(_read_json(Path(path)))
    except ValidationError as e:
        raise InvalidProfile(f"malformed profile file: {e}") from e
    except InvalidInstance as e:
        raise InvalidProfile(str(e)) from e
    patients = {str(p): p for p in instance.patients}
    categories = _category_lookup(instance)
    prefs = {}
    for key, listed in doc.preferences.items():
        if key not in patients:
            raise InvalidProfile(f"profile lists unknown patient {key!r}")
        unknown = [c for c in listed if str(c) not in categories]
        if unknown:
            raise InvalidProfile(f"profile of {key!r} lists unknown categories {unknown}")
        prefs[patients[key]] = tuple(categories[str(c)] for c in listed)
    return PreferenceProfile(prefs)


def parse_precedence(text: str, instance: Instance) -> PrecedenceOrder:
    """Comma-separated category ids, matched through their string form."""
    categories = _category_lookup(instance)
    names = [name.strip() for name in text.split(",") if name.strip()]
    unknown = [name for name in names if name not in categories]
    if unknown:
        raise InvalidPrecedence(f"unknown categories in precedence order: {unknown}")
    return PrecedenceOrder(tuple(categories[name] for name in names))
