"""Raw long-format data ingestion.

The raw document is the form the data arrives in: one CSV with a lane
section (supplier blank on continuation rows, capacity only on a group's
first row) and a requirements section introduced by a marker line. This
module mechanizes the restructuring that would otherwise be done by hand
with pointer formulas: fill-down, number cleaning, and normalization
into the relational scenario tables.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

from .model import DestinationRecord, Lane, Scenario, SupplierRecord, validate
from .money import parse_money, parse_units

HEADER = ("Supplier", "Destination", "Shipping Cost/Unit", "Supplier Capacity")
REQUIREMENTS_MARKER = "Total Required By Destination"

DEFAULT_PLAN_QUANTITY = 1000


class IngestError(ValueError):
    """Problem in the raw document, located by 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.reason = message


class ParseError(IngestError):
    """Structural problem: header, section marker, column counts."""


class NormalizeError(IngestError):
    """Value-level problem found while normalizing parsed rows."""


@dataclass(frozen=True)
class RawRow:
    """One lane-section row, numeric text untouched apart from trimming."""

    line: int
    supplier: str | None
    destination: str
    unit_cost: str
    capacity: str | None


@dataclass(frozen=True)
class RequirementRow:
    """One requirements-section row."""

    line: int
    destination: str
    required: str


def _cells(row: list[str]) -> list[str]:
    return [cell.strip() for cell in row]


def _take(cells: list[str], count: int, line: int) -> list[str]:
    # Trailing empty cells beyond the expected width are spreadsheet-export
    # padding; anything non-empty there is a malformed row.
    if len(cells) < count or any(cells[count:]):
        raise ParseError(line, f"expected {count} columns, got {len(cells)}")
    return cells[:count]


def parse_raw(document: str) -> tuple[list[RawRow], list[RequirementRow]]:
    """Split the raw document into lane rows and requirement rows.

    Numeric text is kept verbatim; cleaning happens in :func:`normalize`.
    Raises ParseError naming the offending 1-based line.
    """
    reader = csv.reader(io.StringIO(document))
    rows: list[RawRow] = []
    requirements: list[RequirementRow] = []

    try:
        first = _cells(next(reader))
    except StopIteration:
        raise ParseError(1, "missing header") from None
    if tuple(first[: len(HEADER)]) != HEADER or any(first[len(HEADER) :]):
        raise ParseError(reader.line_num, f"missing header: expected {','.join(HEADER)}")

    in_requirements = False
    for row in reader:
        line = reader.line_num
        cells = _cells(row)
        if not any(cells):
            continue
        if not in_requirements and cells[0] == REQUIREMENTS_MARKER:
            if any(cells[1:]):
                raise ParseError(line, "unexpected content after section marker")
            in_requirements = True
            continue
        if in_requirements:
            destination, required = _take(cells, 2, line)
            if not destination:
                raise ParseError(line, "requirement row has a blank destination")
            requirements.append(RequirementRow(line, destination, required))
        else:
            supplier, destination, unit_cost, capacity = _take(cells, 4, line)
            if not destination:
                raise ParseError(line, "data row has a blank destination")
            if not rows and not supplier:
                raise ParseError(line, "first data row must name a supplier")
            rows.append(RawRow(line, supplier or None, destination, unit_cost, capacity or None))

    if not in_requirements:
        raise ParseError(reader.line_num or 1, f"missing section marker {REQUIREMENTS_MARKER!r}")
    return rows, requirements


def _units(text: str, line: int, what: str) -> int:
    try:
        value = parse_units(text)
    except ValueError as exc:
        raise NormalizeError(line, f"{what}: {exc}") from exc
    if value < 0:
        raise NormalizeError(line, f"{what} must not be negative, got {text.strip()!r}")
    return value


def normalize(
    rows: list[RawRow],
    requirements: list[RequirementRow],
    plan_default: int = DEFAULT_PLAN_QUANTITY,
) -> Scenario:
    """Normalize parsed rows into a valid scenario.

    Applies supplier fill-down, takes each group's capacity from its
    first row, cleans currency text, and seeds every lane's shipment
    with ``plan_default`` units. Destination order is requirements-file
    order; destinations that only appear in lanes are appended with a
    requirement of zero.
    """
    if plan_default < 0:
        raise ValueError("plan_default must not be negative")

    supplier_order: list[str] = []
    capacities: dict[str, int] = {}
    lanes: list[Lane] = []
    lane_keys: set[tuple[str, str]] = set()
    current: str | None = None

    for row in rows:
        starts_group = row.supplier is not None and row.supplier != current
        if row.supplier is not None:
            current = row.supplier
        if current is None:
            raise NormalizeError(row.line, "no supplier to fill down from")

        if starts_group:
            if current in capacities:
                # Supplier reappearing after other groups: capacity must agree.
                if row.capacity is None:
                    raise NormalizeError(row.line, f"capacity missing on first row of supplier group {current!r}")
                value = _units(row.capacity, row.line, "capacity")
                if value != capacities[current]:
                    raise NormalizeError(
                        row.line,
                        f"conflicting capacity for {current!r}: {value} vs {capacities[current]}",
                    )
            else:
                if row.capacity is None:
                    raise NormalizeError(row.line, f"capacity missing on first row of supplier group {current!r}")
                capacities[current] = _units(row.capacity, row.line, "capacity")
                supplier_order.append(current)
        elif row.capacity is not None:
            value = _units(row.capacity, row.line, "capacity")
            if value != capacities[current]:
                raise NormalizeError(
                    row.line,
                    f"continuation row restates capacity of {current!r} as {value}, group has {capacities[current]}",
                )

        try:
            cost = parse_money(row.unit_cost)
        except ValueError as exc:
            raise NormalizeError(row.line, f"unit cost: {exc}") from exc
        if cost < 0:
            raise NormalizeError(row.line, f"unit cost must not be negative, got {row.unit_cost!r}")

        key = (current, row.destination)
        if key in lane_keys:
            raise NormalizeError(row.line, f"duplicate lane ({current!r}, {row.destination!r})")
        lane_keys.add(key)
        lanes.append(Lane(current, row.destination, cost))

    destination_order: list[str] = []
    required: dict[str, int] = {}
    for req in requirements:
        if req.destination in required:
            raise NormalizeError(req.line, f"destination {req.destination!r} listed more than once in requirements")
        required[req.destination] = _units(req.required, req.line, "requirement")
        destination_order.append(req.destination)
    for lane in lanes:
        if lane.destination not in required:
            required[lane.destination] = 0
            destination_order.append(lane.destination)

    scenario = Scenario(
        suppliers=tuple(SupplierRecord(name, capacities[name]) for name in supplier_order),
        destinations=tuple(DestinationRecord(name, required[name]) for name in destination_order),
        lanes=tuple(lanes),
        plan={lane.key: plan_default for lane in lanes},
    )
    violations = validate(scenario)
    if violations:  # the checks above should make this unreachable
        raise NormalizeError(0, f"normalized scenario is invalid: {violations[0].message}")
    return scenario


def ingest_text(document: str, plan_default: int = DEFAULT_PLAN_QUANTITY) -> Scenario:
    """Parse and normalize a raw document in one step."""
    rows, requirements = parse_raw(document)
    return normalize(rows, requirements, plan_default)
