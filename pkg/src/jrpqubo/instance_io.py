"""JSON instance documents.

See ``docs/instance_format.md`` for the grammar. Every problem is reported
with a location: ``line L, column C`` for malformed JSON, or a field path
such as ``assigned[3].priority`` for bad content.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

from .errors import InstanceFileError, InvalidInstance
from .model import AffinityTable, AssignedJob, JrpInstance, PriorityMode, VacantJob

_TOP_LEVEL = {"priority_mode", "weights", "assigned", "vacants", "affinity_counts"}


def _require(obj, key, where):
    if not isinstance(obj, dict):
        raise InstanceFileError(where, "expected an object")
    if key not in obj:
        raise InstanceFileError(f"{where}.{key}" if where else key, "missing field")
    return obj[key]


def _string(value, where):
    if not isinstance(value, str) or not value:
        raise InstanceFileError(where, f"expected a non-empty string, got {value!r}")
    return value


def _number(value, where):
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise InstanceFileError(where, f"expected a finite number, got {value!r}")
    return float(value)


def _list(value, where):
    if not isinstance(value, list):
        raise InstanceFileError(where, "expected a list")
    return value


def parse_instance(text: str) -> JrpInstance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFileError(f"line {exc.lineno}, column {exc.colno}", exc.msg) from None
    if not isinstance(doc, dict):
        raise InstanceFileError("line 1, column 1", "document must be a JSON object")
    unknown = sorted(set(doc) - _TOP_LEVEL)
    if unknown:
        raise InstanceFileError(unknown[0], "unknown field")

    mode_name = doc.get("priority_mode", "continuous")
    try:
        mode = PriorityMode(mode_name)
    except ValueError:
        raise InstanceFileError("priority_mode", f"expected 'discrete' or 'continuous', got {mode_name!r}") from None

    weights = _require(doc, "weights", "")
    c_priority = _number(_require(weights, "c_priority", "weights"), "weights.c_priority")
    c_affinity = _number(_require(weights, "c_affinity", "weights"), "weights.c_affinity")

    assigned = []
    for k, entry in enumerate(_list(_require(doc, "assigned", ""), "assigned")):
        where = f"assigned[{k}]"
        assigned.append(
            AssignedJob(
                _string(_require(entry, "job", where), f"{where}.job"),
                _string(_require(entry, "agent", where), f"{where}.agent"),
                _number(_require(entry, "priority", where), f"{where}.priority"),
            )
        )
    vacants = []
    for k, entry in enumerate(_list(_require(doc, "vacants", ""), "vacants")):
        where = f"vacants[{k}]"
        vacants.append(
            VacantJob(
                _string(_require(entry, "job", where), f"{where}.job"),
                _number(_require(entry, "priority", where), f"{where}.priority"),
            )
        )
    counts: dict[tuple[str, str], int] = {}
    for k, entry in enumerate(_list(doc.get("affinity_counts", []), "affinity_counts")):
        where = f"affinity_counts[{k}]"
        key = (
            _string(_require(entry, "job", where), f"{where}.job"),
            _string(_require(entry, "agent", where), f"{where}.agent"),
        )
        count = _require(entry, "count", where)
        if isinstance(count, bool) or not isinstance(count, int) or count < 0:
            raise InstanceFileError(f"{where}.count", f"expected a non-negative integer, got {count!r}")
        if key in counts:
            raise InstanceFileError(where, f"duplicate count for {key}")
        counts[key] = count

    try:
        return JrpInstance(
            assigned=tuple(assigned),
            vacants=tuple(vacants),
            affinities=AffinityTable(counts),
            weight_priority=c_priority,
            weight_affinity=c_affinity,
            priority_mode=mode,
        )
    except InvalidInstance as exc:
        raise InstanceFileError("instance", str(exc)) from None


def load_instance(path) -> JrpInstance:
    return parse_instance(Path(path).read_text())


def instance_to_dict(instance: JrpInstance) -> dict:
    return {
        "priority_mode": instance.priority_mode.value,
        "weights": {"c_priority": instance.weight_priority, "c_affinity": instance.weight_affinity},
        "assigned": [{"job": a.job, "agent": a.agent, "priority": a.priority} for a in instance.assigned],
        "vacants": [{"job": v.job, "priority": v.priority} for v in instance.vacants],
        "affinity_counts": [
            {"job": job, "agent": agent, "count": count}
            for (job, agent), count in sorted(instance.affinities.items())
        ],
    }


def dump_instance(instance: JrpInstance) -> str:
    return json.dumps(instance_to_dict(instance), indent=2) + "\n"


def save_instance(instance: JrpInstance, path) -> None:
    Path(path).write_text(dump_instance(instance))
