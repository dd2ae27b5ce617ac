"""Relational scenario model: suppliers, destinations, lanes and the plan.

A scenario is three normalized tables (suppliers, destinations, permitted
lanes) plus the sourcing plan, a mapping from lane to shipped quantity.
Values are immutable; edits go through :mod:`sourceplan.mutate` and
produce new values. Validation never raises: violations are data.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Any, Iterable, Mapping

import json

from .money import format_money, parse_money

LaneKey = tuple[str, str]


@dataclass(frozen=True)
class SupplierRecord:
    """One supplier row: unique name and non-negative capacity in units."""

    name: str
    capacity: int


@dataclass(frozen=True)
class DestinationRecord:
    """One destination row: unique name and non-negative requirement."""

    name: str
    required: int


@dataclass(frozen=True)
class Lane:
    """A permitted supplier-destination pair with unit cost in cents."""

    supplier: str
    destination: str
    unit_cost: int

    @property
    def key(self) -> LaneKey:
        return (self.supplier, self.destination)


@dataclass(frozen=True)
class Scenario:
    """Immutable bundle of the three tables and the sourcing plan.

    ``plan`` maps (supplier, destination) to shipped units; pairs absent
    from the mapping ship zero. Table order is significant and survives
    serialization. Construction does not enforce cross-table invariants;
    run :func:`validate` to check them.
    """

    suppliers: tuple[SupplierRecord, ...] = ()
    destinations: tuple[DestinationRecord, ...] = ()
    lanes: tuple[Lane, ...] = ()
    plan: Mapping[LaneKey, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "suppliers", tuple(self.suppliers))
        object.__setattr__(self, "destinations", tuple(self.destinations))
        object.__setattr__(self, "lanes", tuple(self.lanes))
        object.__setattr__(self, "plan", MappingProxyType(dict(self.plan)))

    def shipment(self, supplier: str, destination: str) -> int:
        """Quantity currently planned on a pair (0 when unset)."""
        return self.plan.get((supplier, destination), 0)


@dataclass(frozen=True)
class Violation:
    """One broken invariant: machine-readable rule, subjects, message."""

    rule: str
    subject: tuple[str, ...]
    message: str

    def to_dict(self) -> dict[str, Any]:
        return {"rule": self.rule, "subject": list(self.subject), "message": self.message}


def _valid_name(name: Any) -> bool:
    return isinstance(name, str) and name.strip() != ""


def _valid_amount(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool) and value >= 0


def validate(candidate: Scenario) -> list[Violation]:
    """Check every scenario invariant; return violations in stable order.

    Total over malformed input: bad field types become violations, never
    exceptions. Order is table order (suppliers, destinations, lanes,
    plan), record order within a table, rule order within a record.
    """
    out: list[Violation] = []

    seen_suppliers: set[str] = set()
    for rec in candidate.suppliers:
        name = getattr(rec, "name", None)
        label = name if isinstance(name, str) else repr(name)
        if not _valid_name(name):
            out.append(Violation("supplier_name_empty", (label,), "supplier name must be non-empty text"))
        elif name in seen_suppliers:
            out.append(Violation("duplicate_supplier", (name,), f"supplier {name!r} listed more than once"))
        else:
            seen_suppliers.add(name)
        capacity = getattr(rec, "capacity", None)
        if not _valid_amount(capacity):
            out.append(
                Violation("invalid_capacity", (label,), f"capacity of {label!r} must be a non-negative integer, got {capacity!r}")
            )

    seen_destinations: set[str] = set()
    for rec in candidate.destinations:
        name = getattr(rec, "name", None)
        label = name if isinstance(name, str) else repr(name)
        if not _valid_name(name):
            out.append(Violation("destination_name_empty", (label,), "destination name must be non-empty text"))
        elif name in seen_destinations:
            out.append(Violation("duplicate_destination", (name,), f"destination {name!r} listed more than once"))
        else:
            seen_destinations.add(name)
        required = getattr(rec, "required", None)
        if not _valid_amount(required):
            out.append(
                Violation("invalid_required", (label,), f"requirement of {label!r} must be a non-negative integer, got {required!r}")
            )

    seen_lanes: set[LaneKey] = set()
    for lane in candidate.lanes:
        sup, dest = getattr(lane, "supplier", None), getattr(lane, "destination", None)
        pair = (str(sup), str(dest))
        if sup not in seen_suppliers:
            out.append(Violation("lane_unknown_supplier", pair, f"lane references unknown supplier {sup!r}"))
        if dest not in seen_destinations:
            out.append(Violation("lane_unknown_destination", pair, f"lane references unknown destination {dest!r}"))
        if (sup, dest) in seen_lanes:
            out.append(Violation("duplicate_lane", pair, f"lane ({sup!r}, {dest!r}) listed more than once"))
        else:
            seen_lanes.add((sup, dest))
        cost = getattr(lane, "unit_cost", None)
        if not _valid_amount(cost):
            out.append(Violation("invalid_unit_cost", pair, f"unit cost on ({sup!r}, {dest!r}) must be non-negative, got {cost!r}"))

    for key, quantity in candidate.plan.items():
        if not (isinstance(key, tuple) and len(key) == 2):
            out.append(Violation("shipment_without_lane", (repr(key),), f"plan key {key!r} is not a supplier-destination pair"))
            continue
        pair = (str(key[0]), str(key[1]))
        if key not in seen_lanes:
            out.append(
                Violation("shipment_without_lane", pair, f"plan ships on ({key[0]!r}, {key[1]!r}) but no such lane exists")
            )
        if not _valid_amount(quantity):
            out.append(
                Violation("invalid_quantity", pair, f"shipment on ({key[0]!r}, {key[1]!r}) must be a non-negative integer, got {quantity!r}")
            )

    return out


def lane_lookup(scenario: Scenario, supplier: str, destination: str) -> Lane | None:
    """The unique lane for a pair, or None when the pair is prohibited."""
    for lane in scenario.lanes:
        if lane.supplier == supplier and lane.destination == destination:
            return lane
    return None


def lane_index(scenario: Scenario) -> dict[LaneKey, Lane]:
    """Lane table keyed by (supplier, destination); insertion order kept."""
    return {lane.key: lane for lane in scenario.lanes}


class ScenarioFormatError(ValueError):
    """Raised when a scenario document is structurally unreadable."""


def _expect_list(doc: Mapping[str, Any], key: str) -> list[Any]:
    value = doc.get(key)
    if not isinstance(value, list):
        raise ScenarioFormatError(f"document must carry a {key!r} array")
    return value


def _expect_str(obj: Mapping[str, Any], key: str, where: str) -> str:
    value = obj.get(key)
    if not isinstance(value, str):
        raise ScenarioFormatError(f"{where}: field {key!r} must be a string, got {value!r}")
    return value


def _expect_int(obj: Mapping[str, Any], key: str, where: str) -> int:
    value = obj.get(key)
    if not isinstance(value, int) or isinstance(value, bool):
        raise ScenarioFormatError(f"{where}: field {key!r} must be an integer, got {value!r}")
    return value


def scenario_to_dict(scenario: Scenario) -> dict[str, Any]:
    """Canonical serialization: four arrays, money as two-decimal strings."""
    return {
        "suppliers": [{"name": s.name, "capacity": s.capacity} for s in scenario.suppliers],
        "destinations": [{"name": d.name, "required": d.required} for d in scenario.destinations],
        "lanes": [
            {"supplier": l.supplier, "destination": l.destination, "unit_cost": format_money(l.unit_cost)}
            for l in scenario.lanes
        ],
        "plan": [
            {"supplier": sup, "destination": dest, "quantity": qty}
            for (sup, dest), qty in scenario.plan.items()
        ],
    }


def scenario_from_dict(doc: Mapping[str, Any]) -> Scenario:
    """Parse the canonical serialization back into a Scenario.

    Raises ScenarioFormatError for structural problems (missing arrays,
    wrong field types, duplicate plan entries). Semantic invariants are
    left to :func:`validate` so callers can report them as violations.
    """
    if not isinstance(doc, Mapping):
        raise ScenarioFormatError(f"scenario document must be an object, got {type(doc).__name__}")
    suppliers = []
    for i, obj in enumerate(_expect_list(doc, "suppliers")):
        if not isinstance(obj, Mapping):
            raise ScenarioFormatError(f"suppliers[{i}] must be an object")
        suppliers.append(SupplierRecord(_expect_str(obj, "name", f"suppliers[{i}]"), _expect_int(obj, "capacity", f"suppliers[{i}]")))
    destinations = []
    for i, obj in enumerate(_expect_list(doc, "destinations")):
        if not isinstance(obj, Mapping):
            raise ScenarioFormatError(f"destinations[{i}] must be an object")
        destinations.append(
            DestinationRecord(_expect_str(obj, "name", f"destinations[{i}]"), _expect_int(obj, "required", f"destinations[{i}]"))
        )
    lanes = []
    for i, obj in enumerate(_expect_list(doc, "lanes")):
        if not isinstance(obj, Mapping):
            raise ScenarioFormatError(f"lanes[{i}] must be an object")
        cost_text = _expect_str(obj, "unit_cost", f"lanes[{i}]")
        try:
            cost = parse_money(cost_text)
        except ValueError as exc:
            raise ScenarioFormatError(f"lanes[{i}]: {exc}") from exc
        lanes.append(Lane(_expect_str(obj, "supplier", f"lanes[{i}]"), _expect_str(obj, "destination", f"lanes[{i}]"), cost))
    plan: dict[LaneKey, int] = {}
    for i, obj in enumerate(_expect_list(doc, "plan")):
        if not isinstance(obj, Mapping):
            raise ScenarioFormatError(f"plan[{i}] must be an object")
        key = (_expect_str(obj, "supplier", f"plan[{i}]"), _expect_str(obj, "destination", f"plan[{i}]"))
        if key in plan:
            raise ScenarioFormatError(f"plan[{i}]: pair ({key[0]!r}, {key[1]!r}) appears more than once")
        plan[key] = _expect_int(obj, "quantity", f"plan[{i}]")
    return Scenario(tuple(suppliers), tuple(destinations), tuple(lanes), plan)


def scenario_to_json(scenario: Scenario) -> str:
    """Pretty-printed canonical JSON with stable key order."""
    return json.dumps(scenario_to_dict(scenario), indent=2) + "\n"


def scenario_from_json(text: str) -> Scenario:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioFormatError(f"invalid JSON: {exc}") from exc
    return scenario_from_dict(doc)


def iter_lane_keys(lanes: Iterable[Lane]) -> set[LaneKey]:
    return {lane.key for lane in lanes}
