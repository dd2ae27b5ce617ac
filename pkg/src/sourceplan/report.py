"""Matrix view of a scenario: the classic suppliers-by-destinations grid.

The grid is derived on demand from the tables and is read-only; the
tables stay the single source of truth. Prohibited pairs (no lane) are
distinct from zero shipments: blocked cells render as "—" in text and
empty in CSV, while an inactive lane shows 0.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Any

from .evaluate import evaluate
from .model import Scenario, lane_index
from .money import format_money

COSTS_TITLE = "Costs ($/unit)"
PLAN_TITLE = "Sourcing Plan (Units Shipped)"
BLOCKED = "—"


@dataclass(frozen=True)
class MatrixReport:
    """Pivoted scenario: cost and plan matrices plus the margin sums.

    ``cost_cells[i][j]`` / ``plan_cells[i][j]`` are None exactly when
    supplier i has no lane to destination j. Money is integer cents.
    """

    row_labels: tuple[str, ...]
    column_labels: tuple[str, ...]
    cost_cells: tuple[tuple[int | None, ...], ...]
    plan_cells: tuple[tuple[int | None, ...], ...]
    supplied_margin: tuple[int, ...]
    delivered_margin: tuple[int, ...]
    capacity_margin: tuple[int, ...]
    required_margin: tuple[int, ...]
    total_cost: int

    def to_dict(self) -> dict[str, Any]:
        return {
            "row_labels": list(self.row_labels),
            "column_labels": list(self.column_labels),
            "cost_cells": [
                [None if cell is None else format_money(cell) for cell in row] for row in self.cost_cells
            ],
            "plan_cells": [list(row) for row in self.plan_cells],
            "supplied_margin": list(self.supplied_margin),
            "delivered_margin": list(self.delivered_margin),
            "capacity_margin": list(self.capacity_margin),
            "required_margin": list(self.required_margin),
            "total_cost": format_money(self.total_cost),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def matrix_report(scenario: Scenario) -> MatrixReport:
    """Pivot the lane table: suppliers as rows, destinations as columns."""
    lanes = lane_index(scenario)
    evaluation = evaluate(scenario)
    rows = tuple(record.name for record in scenario.suppliers)
    cols = tuple(record.name for record in scenario.destinations)

    cost_cells = tuple(
        tuple(lanes[(r, c)].unit_cost if (r, c) in lanes else None for c in cols) for r in rows
    )
    plan_cells = tuple(
        tuple(scenario.shipment(r, c) if (r, c) in lanes else None for c in cols) for r in rows
    )
    return MatrixReport(
        row_labels=rows,
        column_labels=cols,
        cost_cells=cost_cells,
        plan_cells=plan_cells,
        supplied_margin=tuple(evaluation.supplied[r] for r in rows),
        delivered_margin=tuple(evaluation.delivered[c] for c in cols),
        capacity_margin=tuple(record.capacity for record in scenario.suppliers),
        required_margin=tuple(record.required for record in scenario.destinations),
        total_cost=evaluation.total_cost,
    )


def flatten(report: MatrixReport) -> list[tuple[str, str, int, int]]:
    """Back out (supplier, destination, unit_cost, quantity) tuples from
    the present cells; inverse of the pivot, row-major order."""
    out = []
    for i, supplier in enumerate(report.row_labels):
        for j, destination in enumerate(report.column_labels):
            cost = report.cost_cells[i][j]
            if cost is not None:
                quantity = report.plan_cells[i][j]
                assert quantity is not None
                out.append((supplier, destination, cost, quantity))
    return out


def _grid(rows: list[list[str]], right_align_from: int = 1) -> list[str]:
    if not rows:
        return []
    width = max(len(row) for row in rows)
    padded = [row + [""] * (width - len(row)) for row in rows]
    col_widths = [max(len(row[i]) for row in padded) for i in range(width)]
    lines = []
    for row in padded:
        cells = [
            row[i].rjust(col_widths[i]) if i >= right_align_from else row[i].ljust(col_widths[i])
            for i in range(width)
        ]
        lines.append("  ".join(cells).rstrip())
    return lines


def render_text(report: MatrixReport) -> str:
    """Aligned plain-text grid: costs block with Capacity/Required margins,
    plan block with Supplied/Delivered margins, total cost footer."""
    cols = list(report.column_labels)

    cost_rows: list[list[str]] = [[""] + cols + ["Capacity"]]
    for i, label in enumerate(report.row_labels):
        cells = [BLOCKED if cell is None else format_money(cell) for cell in report.cost_cells[i]]
        cost_rows.append([label] + cells + [str(report.capacity_margin[i])])
    cost_rows.append(["Required"] + [str(v) for v in report.required_margin])

    plan_rows: list[list[str]] = [[""] + cols + ["Supplied"]]
    for i, label in enumerate(report.row_labels):
        cells = [BLOCKED if cell is None else str(cell) for cell in report.plan_cells[i]]
        plan_rows.append([label] + cells + [str(report.supplied_margin[i])])
    plan_rows.append(["Delivered"] + [str(v) for v in report.delivered_margin])
    plan_rows.append(["Required"] + [str(v) for v in report.required_margin])

    lines = [COSTS_TITLE]
    lines += _grid(cost_rows)
    lines.append("")
    lines.append(PLAN_TITLE)
    lines += _grid(plan_rows)
    lines.append("")
    lines.append(f"Total Sourcing Cost: {format_money(report.total_cost)}")
    return "\n".join(lines) + "\n"


def render_csv(report: MatrixReport) -> str:
    """Two labeled CSV blocks (costs, plan) with identical headers;
    blocked cells are empty."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = ["Supplier"] + list(report.column_labels)

    writer.writerow([COSTS_TITLE])
    writer.writerow(header)
    for i, label in enumerate(report.row_labels):
        writer.writerow([label] + ["" if cell is None else format_money(cell) for cell in report.cost_cells[i]])
    writer.writerow([])
    writer.writerow([PLAN_TITLE])
    writer.writerow(header)
    for i, label in enumerate(report.row_labels):
        writer.writerow([label] + ["" if cell is None else str(cell) for cell in report.plan_cells[i]])
    return buf.getvalue()
