"""
Canonical JSON for conditions and environments.

Dumps use compact separators and the field order of each model's to_dict,
so equal conditions always serialize to identical text.
"""

import json

from app.models.condition import CohenCondition, EvDiffCondition, ScaleCondition
from app.models.iteration import Environment, FlatIterCondition, QCondition
from app.models.product import DCondition, RCondition
from app.models.truncation import Truncation
from app.utils.errors import InvalidConditionError

_CONDITION_TYPES = {
    "cohen": CohenCondition,
    "scale": ScaleCondition,
    "evdiff": EvDiffCondition,
    "q": QCondition,
    "flat": FlatIterCondition,
}


def condition_to_dict(condition):
    return condition.to_dict()


def condition_from_dict(data):
    """
    Rebuild a condition from its dict form.

    Product conditions come back as DCondition when an "n" field is present
    and as RCondition otherwise.
    """
    kind = data.get("kind")
    if kind == "r":
        return DCondition.from_dict(data) if "n" in data else RCondition.from_dict(data)
    if kind not in _CONDITION_TYPES:
        raise InvalidConditionError(f"Unknown condition kind: {kind!r}")
    return _CONDITION_TYPES[kind].from_dict(data)


def dumps(value):
    """Canonical JSON text for a model or a plain value."""
    if hasattr(value, "to_dict"):
        value = value.to_dict()
    return json.dumps(value, separators=(",", ":"), ensure_ascii=False)


def loads_condition(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InvalidConditionError(f"Condition is not valid JSON: {e}") from e
    return condition_from_dict(data)


def environment_from_dict(data):
    return Environment.from_dict(data)


def truncation_from_dict(data):
    return Truncation(tuple(data.get("indices", ())), int(data.get("max_len", 1)), int(data.get("max_val", 1)))
