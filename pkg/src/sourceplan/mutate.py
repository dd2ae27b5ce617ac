"""Structural and numeric scenario edits.

Every operation takes a valid scenario value and returns a new one; the
input is never touched. Adding a supplier, a destination, or a lane
needs no change anywhere else: evaluation, reporting, and solving read
the tables, so they pick up the new structure as-is. That property is
the point of the table-driven layout, and the test suite pins it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Mapping

from .model import DestinationRecord, Lane, LaneKey, Scenario, SupplierRecord
from .money import parse_money


class MutationError(ValueError):
    """Base class for rejected mutations; the scenario is left as-is."""


class UnknownNameError(MutationError):
    """A referenced supplier or destination does not exist."""


class DuplicateNameError(MutationError):
    """The new supplier or destination name is already taken."""


class DuplicateLaneError(MutationError):
    """The supplier-destination pair already has a lane."""


class MissingLaneError(MutationError):
    """The supplier-destination pair has no lane."""


class NegativeValueError(MutationError):
    """Quantities, capacities, requirements and costs must be >= 0."""


class ScriptError(MutationError):
    """A mutation script is structurally malformed."""


@dataclass(frozen=True)
class CascadeReport:
    """What a supplier/destination removal would take with it."""

    lanes: tuple[Lane, ...]
    shipments: dict[LaneKey, int]


def _require_non_negative(value: int, what: str) -> None:
    if not isinstance(value, int) or isinstance(value, bool) or value < 0:
        raise NegativeValueError(f"{what} must be a non-negative integer, got {value!r}")


def _require_name(name: str, what: str) -> None:
    if not isinstance(name, str) or not name.strip():
        raise MutationError(f"{what} must be non-empty text, got {name!r}")


def _supplier_names(scenario: Scenario) -> set[str]:
    return {record.name for record in scenario.suppliers}


def _destination_names(scenario: Scenario) -> set[str]:
    return {record.name for record in scenario.destinations}


def add_supplier(scenario: Scenario, name: str, capacity: int) -> Scenario:
    _require_name(name, "supplier name")
    _require_non_negative(capacity, "capacity")
    if name in _supplier_names(scenario):
        raise DuplicateNameError(f"supplier {name!r} already exists")
    return Scenario(
        scenario.suppliers + (SupplierRecord(name, capacity),),
        scenario.destinations,
        scenario.lanes,
        scenario.plan,
    )


def add_destination(scenario: Scenario, name: str, required: int) -> Scenario:
    _require_name(name, "destination name")
    _require_non_negative(required, "requirement")
    if name in _destination_names(scenario):
        raise DuplicateNameError(f"destination {name!r} already exists")
    return Scenario(
        scenario.suppliers,
        scenario.destinations + (DestinationRecord(name, required),),
        scenario.lanes,
        scenario.plan,
    )


def add_lane(
    scenario: Scenario,
    supplier: str,
    destination: str,
    unit_cost: int,
    initial_quantity: int = 0,
) -> Scenario:
    """Permit a new supplier-destination pair at the given cost in cents.

    The new lane enters the plan immediately with ``initial_quantity``
    units, so seeding a placeholder plan is one call per lane.
    """
    if supplier not in _supplier_names(scenario):
        raise UnknownNameError(f"unknown supplier {supplier!r}")
    if destination not in _destination_names(scenario):
        raise UnknownNameError(f"unknown destination {destination!r}")
    _require_non_negative(unit_cost, "unit cost")
    _require_non_negative(initial_quantity, "initial quantity")
    key = (supplier, destination)
    if any(lane.key == key for lane in scenario.lanes):
        raise DuplicateLaneError(f"lane ({supplier!r}, {destination!r}) already exists")
    plan = dict(scenario.plan)
    plan[key] = initial_quantity
    return Scenario(
        scenario.suppliers,
        scenario.destinations,
        scenario.lanes + (Lane(supplier, destination, unit_cost),),
        plan,
    )


def remove_lane(scenario: Scenario, supplier: str, destination: str) -> Scenario:
    key = (supplier, destination)
    if not any(lane.key == key for lane in scenario.lanes):
        raise MissingLaneError(f"no lane ({supplier!r}, {destination!r})")
    plan = {k: v for k, v in scenario.plan.items() if k != key}
    return Scenario(
        scenario.suppliers,
        scenario.destinations,
        tuple(lane for lane in scenario.lanes if lane.key != key),
        plan,
    )


def remove_supplier(scenario: Scenario, name: str, dry_run: bool = False) -> Scenario | CascadeReport:
    """Drop a supplier and cascade away its lanes and shipments.

    With ``dry_run`` the scenario is untouched and the would-be cascade
    is returned instead.
    """
    if name not in _supplier_names(scenario):
        raise UnknownNameError(f"unknown supplier {name!r}")
    doomed = tuple(lane for lane in scenario.lanes if lane.supplier == name)
    if dry_run:
        return CascadeReport(doomed, {k: v for k, v in scenario.plan.items() if k[0] == name})
    return Scenario(
        tuple(record for record in scenario.suppliers if record.name != name),
        scenario.destinations,
        tuple(lane for lane in scenario.lanes if lane.supplier != name),
        {k: v for k, v in scenario.plan.items() if k[0] != name},
    )


def remove_destination(scenario: Scenario, name: str, dry_run: bool = False) -> Scenario | CascadeReport:
    """Drop a destination; cascades like :func:`remove_supplier`."""
    if name not in _destination_names(scenario):
        raise UnknownNameError(f"unknown destination {name!r}")
    doomed = tuple(lane for lane in scenario.lanes if lane.destination == name)
    if dry_run:
        return CascadeReport(doomed, {k: v for k, v in scenario.plan.items() if k[1] == name})
    return Scenario(
        scenario.suppliers,
        tuple(record for record in scenario.destinations if record.name != name),
        tuple(lane for lane in scenario.lanes if lane.destination != name),
        {k: v for k, v in scenario.plan.items() if k[1] != name},
    )


def set_shipment(scenario: Scenario, supplier: str, destination: str, quantity: int) -> Scenario:
    _require_non_negative(quantity, "quantity")
    key = (supplier, destination)
    if not any(lane.key == key for lane in scenario.lanes):
        raise MissingLaneError(f"cannot ship on ({supplier!r}, {destination!r}): no such lane")
    plan = dict(scenario.plan)
    plan[key] = quantity
    return Scenario(scenario.suppliers, scenario.destinations, scenario.lanes, plan)


def set_capacity(scenario: Scenario, supplier: str, capacity: int) -> Scenario:
    _require_non_negative(capacity, "capacity")
    if supplier not in _supplier_names(scenario):
        raise UnknownNameError(f"unknown supplier {supplier!r}")
    return Scenario(
        tuple(
            SupplierRecord(record.name, capacity) if record.name == supplier else record
            for record in scenario.suppliers
        ),
        scenario.destinations,
        scenario.lanes,
        scenario.plan,
    )


def set_required(scenario: Scenario, destination: str, required: int) -> Scenario:
    _require_non_negative(required, "requirement")
    if destination not in _destination_names(scenario):
        raise UnknownNameError(f"unknown destination {destination!r}")
    return Scenario(
        scenario.suppliers,
        tuple(
            DestinationRecord(record.name, required) if record.name == destination else record
            for record in scenario.destinations
        ),
        scenario.lanes,
        scenario.plan,
    )


def set_unit_cost(scenario: Scenario, supplier: str, destination: str, unit_cost: int) -> Scenario:
    _require_non_negative(unit_cost, "unit cost")
    key = (supplier, destination)
    if not any(lane.key == key for lane in scenario.lanes):
        raise MissingLaneError(f"no lane ({supplier!r}, {destination!r})")
    return Scenario(
        scenario.suppliers,
        scenario.destinations,
        tuple(Lane(supplier, destination, unit_cost) if lane.key == key else lane for lane in scenario.lanes),
        scenario.plan,
    )


# --- mutation scripts -------------------------------------------------------
#
# A script is a JSON array of {"op": ..., "args": {...}} records applied in
# order; any failure aborts the whole script. Money args are two-decimal
# strings, matching the canonical scenario serialization.


def _arg_str(args: Mapping[str, Any], key: str) -> str:
    value = args.get(key)
    if not isinstance(value, str):
        raise ScriptError(f"argument {key!r} must be a string, got {value!r}")
    return value


def _arg_int(args: Mapping[str, Any], key: str, default: int | None = None) -> int:
    if key not in args and default is not None:
        return default
    value = args.get(key)
    if not isinstance(value, int) or isinstance(value, bool):
        raise ScriptError(f"argument {key!r} must be an integer, got {value!r}")
    return value


def _arg_money(args: Mapping[str, Any], key: str) -> int:
    text = _arg_str(args, key)
    try:
        return parse_money(text)
    except ValueError as exc:
        raise ScriptError(f"argument {key!r}: {exc}") from exc


_SCRIPT_OPS: dict[str, Callable[[Scenario, Mapping[str, Any]], Scenario]] = {
    "add_supplier": lambda s, a: add_supplier(s, _arg_str(a, "name"), _arg_int(a, "capacity")),
    "add_destination": lambda s, a: add_destination(s, _arg_str(a, "name"), _arg_int(a, "required")),
    "add_lane": lambda s, a: add_lane(
        s, _arg_str(a, "supplier"), _arg_str(a, "destination"), _arg_money(a, "unit_cost"), _arg_int(a, "initial_quantity", 0)
    ),
    "remove_lane": lambda s, a: remove_lane(s, _arg_str(a, "supplier"), _arg_str(a, "destination")),
    "remove_supplier": lambda s, a: remove_supplier(s, _arg_str(a, "name")),
    "remove_destination": lambda s, a: remove_destination(s, _arg_str(a, "name")),
    "set_shipment": lambda s, a: set_shipment(s, _arg_str(a, "supplier"), _arg_str(a, "destination"), _arg_int(a, "quantity")),
    "set_capacity": lambda s, a: set_capacity(s, _arg_str(a, "name"), _arg_int(a, "capacity")),
    "set_required": lambda s, a: set_required(s, _arg_str(a, "name"), _arg_int(a, "required")),
    "set_unit_cost": lambda s, a: set_unit_cost(
        s, _arg_str(a, "supplier"), _arg_str(a, "destination"), _arg_money(a, "unit_cost")
    ),
}

SCRIPT_OPS = tuple(_SCRIPT_OPS)


def apply_script(scenario: Scenario, script: Any) -> Scenario:
    """Apply a parsed mutation script in order, all-or-nothing.

    Raises ScriptError on malformed structure and the specific
    MutationError of the first failing step; in either case the caller's
    scenario is unchanged (operations are value-to-value).
    """
    if not isinstance(script, list):
        raise ScriptError("script must be an array of {op, args} records")
    current = scenario
    for index, step in enumerate(script):
        if not isinstance(step, Mapping):
            raise ScriptError(f"step {index}: must be an object, got {step!r}")
        op = step.get("op")
        if op not in _SCRIPT_OPS:
            raise ScriptError(f"step {index}: unknown op {op!r}")
        args = step.get("args", {})
        if not isinstance(args, Mapping):
            raise ScriptError(f"step {index}: args must be an object, got {args!r}")
        try:
            current = _SCRIPT_OPS[op](current, args)
        except MutationError as exc:
            raise type(exc)(f"step {index} ({op}): {exc}") from exc
    return current
