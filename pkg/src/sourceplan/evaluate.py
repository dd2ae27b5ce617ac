"""Derived quantities of a scenario: totals, slack, diagnostics.

Everything here is a pure function of the scenario value; evaluating an
infeasible or half-finished plan is normal (the planner iterates through
such states), so problems surface as diagnostics, never as errors.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from .model import Scenario, lane_index
from .money import format_money

CAPACITY_EXCEEDED = "capacity_exceeded"
SHORTFALL = "shortfall"
SURPLUS = "surplus"


@dataclass(frozen=True)
class Diagnostic:
    """One planning problem: a supplier over capacity, or a destination
    short of / beyond its requirement. ``amount`` is always positive."""

    kind: str
    subject: str
    amount: int

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "subject": self.subject, "amount": self.amount}


@dataclass(frozen=True)
class Evaluation:
    """All computed outputs for one scenario, money in exact cents."""

    supplied: dict[str, int]
    delivered: dict[str, int]
    excess_capacity: dict[str, int]
    total_cost: int
    diagnostics: tuple[Diagnostic, ...]

    def to_dict(self) -> dict[str, Any]:
        return {
            "supplied": dict(self.supplied),
            "delivered": dict(self.delivered),
            "excess_capacity": dict(self.excess_capacity),
            "total_cost": format_money(self.total_cost),
            "diagnostics": [d.to_dict() for d in self.diagnostics],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def supplied(scenario: Scenario) -> dict[str, int]:
    """Units shipped per supplier (group-sum of the plan by supplier)."""
    totals = {record.name: 0 for record in scenario.suppliers}
    for (sup, _), quantity in scenario.plan.items():
        totals[sup] += quantity
    return totals


def delivered(scenario: Scenario) -> dict[str, int]:
    """Units received per destination (group-sum of the plan by destination)."""
    totals = {record.name: 0 for record in scenario.destinations}
    for (_, dest), quantity in scenario.plan.items():
        totals[dest] += quantity
    return totals


def total_cost(scenario: Scenario) -> int:
    """Total sourcing cost in cents: sum of quantity times lane unit cost."""
    lanes = lane_index(scenario)
    return sum(quantity * lanes[key].unit_cost for key, quantity in scenario.plan.items())


def evaluate(scenario: Scenario) -> Evaluation:
    """Bundle supplied/delivered/cost with slack and diagnostics.

    Diagnostics come out in table order: suppliers over capacity first,
    then destinations short of or beyond their requirement.
    """
    sup_totals = supplied(scenario)
    dest_totals = delivered(scenario)

    excess = {record.name: record.capacity - sup_totals[record.name] for record in scenario.suppliers}

    diagnostics: list[Diagnostic] = []
    for record in scenario.suppliers:
        over = sup_totals[record.name] - record.capacity
        if over > 0:
            diagnostics.append(Diagnostic(CAPACITY_EXCEEDED, record.name, over))
    for record in scenario.destinations:
        got = dest_totals[record.name]
        if got < record.required:
            diagnostics.append(Diagnostic(SHORTFALL, record.name, record.required - got))
        elif got > record.required:
            diagnostics.append(Diagnostic(SURPLUS, record.name, got - record.required))

    return Evaluation(
        supplied=sup_totals,
        delivered=dest_totals,
        excess_capacity=excess,
        total_cost=total_cost(scenario),
        diagnostics=tuple(diagnostics),
    )
