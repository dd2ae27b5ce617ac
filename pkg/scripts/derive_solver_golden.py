#!/usr/bin/env python3
"""Derive the reference optimum for the base scenario with an off-the-shelf LP solver.

The fast solver in sourceplan.solver is checked in tests against the value this
script produces.  To keep the check independent, the instance data is written
out by hand below (not read through the package's ingest path) and the optimum
comes from scipy's HiGHS backend rather than our own code.

Run from the repository root:

    python3 scripts/derive_solver_golden.py

Rewrites tests/data/base_solver_golden.json in place.
"""

import argparse
import json
import pathlib

import numpy as np
from scipy.optimize import linprog

# Base instance, transcribed by hand.  Costs are integer hundredths.
CAPACITIES = {
    "Georgican": 2500,
    "Hickock": 9000,
    "India": 3000,
    "Johnson": 27000,
    "Lincoln": 6000,
    "Manister": 3000,
    "Ocean": 30000,
    "Calais": 3600,
    "Robert": 2700,
    "Simpson": 2300,
}

REQUIRED = {
    "Abbot": 32422,
    "Bone": 21233,
    "Chest": 25125,
}

LANES = [
    ("Georgican", "Chest", 3080),
    ("Hickock", "Chest", 3680),
    ("India", "Chest", 3400),
    ("Johnson", "Abbot", 4200),
    ("Johnson", "Bone", 4160),
    ("Johnson", "Chest", 4560),
    ("Lincoln", "Abbot", 3315),
    ("Manister", "Abbot", 3200),
    ("Ocean", "Abbot", 4410),
    ("Ocean", "Bone", 4536),
    ("Calais", "Bone", 3500),
    ("Robert", "Bone", 3312),
    ("Simpson", "Bone", 3240),
]


def solve():
    suppliers = list(CAPACITIES)
    destinations = list(REQUIRED)
    n = len(LANES)

    cost = np.array([c for _, _, c in LANES], dtype=float)

    # One <= row per supplier (capacity), one == row per destination (required).
    a_ub = np.zeros((len(suppliers), n))
    b_ub = np.array([CAPACITIES[s] for s in suppliers], dtype=float)
    a_eq = np.zeros((len(destinations), n))
    b_eq = np.array([REQUIRED[d] for d in destinations], dtype=float)
    for j, (sup, dest, _) in enumerate(LANES):
        a_ub[suppliers.index(sup), j] = 1.0
        a_eq[destinations.index(dest), j] = 1.0

    result = linprog(
        cost,
        A_ub=a_ub,
        b_ub=b_ub,
        A_eq=a_eq,
        b_eq=b_eq,
        bounds=(0, None),
        method="highs",
        integrality=np.ones(n),
    )
    if not result.success:
        raise SystemExit(f"HiGHS did not find an optimum: {result.message}")

    quantities = [round(x) for x in result.x]
    for got, want in zip(quantities, result.x):
        if abs(got - want) > 1e-6:
            raise SystemExit(f"non-integral shipment in LP result: {want}")

    # Re-check feasibility and recompute the objective in exact integer
    # arithmetic; nothing below trusts floating point.
    shipped_from = {s: 0 for s in suppliers}
    shipped_to = {d: 0 for d in destinations}
    objective_cents = 0
    for (sup, dest, unit_cost), qty in zip(LANES, quantities):
        if qty < 0:
            raise SystemExit("negative shipment in LP result")
        shipped_from[sup] += qty
        shipped_to[dest] += qty
        objective_cents += unit_cost * qty
    for s in suppliers:
        if shipped_from[s] > CAPACITIES[s]:
            raise SystemExit(f"capacity exceeded at {s}")
    for d in destinations:
        if shipped_to[d] != REQUIRED[d]:
            raise SystemExit(f"requirement missed at {d}")

    plan = [
        {"supplier": sup, "destination": dest, "quantity": qty}
        for (sup, dest, _), qty in zip(LANES, quantities)
        if qty > 0
    ]
    return objective_cents, plan


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    default_out = pathlib.Path(__file__).resolve().parent.parent / "tests" / "data" / "base_solver_golden.json"
    parser.add_argument("--out", type=pathlib.Path, default=default_out)
    args = parser.parse_args()

    objective_cents, plan = solve()
    whole, cents = divmod(objective_cents, 100)
    document = {
        "derived_by": "scripts/derive_solver_golden.py (scipy HiGHS)",
        "status": "optimal",
        "objective": f"{whole}.{cents:02d}",
        "objective_cents": objective_cents,
        "plan": plan,
    }
    args.out.write_text(json.dumps(document, indent=2) + "\n", encoding="utf-8")
    print(f"objective {document['objective']} -> {args.out}")


if __name__ == "__main__":
    main()
