"""Minimum-cost sourcing plans.

``solve_min_cost`` finds an integral plan delivering every requirement
exactly without exceeding any capacity, at minimum total cost. It runs
successive shortest paths with node potentials on the bipartite flow
network (source -> suppliers -> lanes -> destinations -> sink); costs
are integer cents throughout, so the objective carries no float drift.
Excess capacity simply stays unshipped.

``oracle_solve`` is the test-only companion: exhaustive search over all
integral feasible plans of tiny instances, memoized per destination on
the remaining-capacity vector. It shares no code with the main solver.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from heapq import heappop, heappush
from typing import Any, Iterator, Mapping

from .model import LaneKey, Scenario
from .money import format_money

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"

ORACLE_MAX_SIDE = 3
ORACLE_MAX_VALUE = 20


class SolveCancelled(Exception):
    """Solve was cancelled cooperatively; no partial result exists."""


class OracleBoundsError(ValueError):
    """Instance too large for exhaustive search."""


class CancellationToken:
    """Cooperative cancellation flag, checked between augmentations."""

    def __init__(self) -> None:
        self._event = threading.Event()

    def cancel(self) -> None:
        self._event.set()

    @property
    def cancelled(self) -> bool:
        return self._event.is_set()


@dataclass(frozen=True)
class SolveResult:
    """Outcome of a solve: an optimal plan, or infeasibility.

    The plan lists only lanes that ship a positive quantity; on
    infeasible instances it is empty and the objective is None.
    """

    status: str
    plan: Mapping[LaneKey, int]
    objective: int | None

    def to_dict(self) -> dict[str, Any]:
        return {
            "status": self.status,
            "objective": None if self.objective is None else format_money(self.objective),
            "plan": [
                {"supplier": sup, "destination": dest, "quantity": qty}
                for (sup, dest), qty in self.plan.items()
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def apply_plan(scenario: Scenario, plan: Mapping[LaneKey, int]) -> Scenario:
    """Scenario with its plan replaced wholesale (tables untouched)."""
    return Scenario(scenario.suppliers, scenario.destinations, scenario.lanes, plan)


def solve_min_cost(scenario: Scenario, cancel: CancellationToken | None = None) -> SolveResult:
    """Compute a minimum-cost feasible plan, ignoring the current one.

    Deterministic: repeated calls return the identical plan. Raises
    SolveCancelled if ``cancel`` fires; never returns a partial plan.
    """
    n_sup = len(scenario.suppliers)
    n_dest = len(scenario.destinations)
    sup_idx = {record.name: i for i, record in enumerate(scenario.suppliers)}
    dest_idx = {record.name: i for i, record in enumerate(scenario.destinations)}
    total_required = sum(record.required for record in scenario.destinations)
    if total_required == 0:
        return SolveResult(OPTIMAL, {}, 0)
    if sum(record.capacity for record in scenario.suppliers) < total_required:
        return SolveResult(INFEASIBLE, {}, None)

    # Node layout: 0 = source, 1..n_sup suppliers, then destinations, last = sink.
    n_nodes = n_sup + n_dest + 2
    source = 0
    sink = n_nodes - 1

    heads: list[int] = []
    caps: list[int] = []
    costs: list[int] = []
    adj: list[list[int]] = [[] for _ in range(n_nodes)]

    def arc(u: int, v: int, cap: int, cost: int) -> int:
        index = len(heads)
        heads.extend((v, u))
        caps.extend((cap, 0))
        costs.extend((cost, -cost))
        adj[u].append(index)
        adj[v].append(index + 1)
        return index

    for i, record in enumerate(scenario.suppliers):
        arc(source, 1 + i, record.capacity, 0)
    lane_arcs: list[int] = []
    for lane in scenario.lanes:
        u = 1 + sup_idx[lane.supplier]
        v = 1 + n_sup + dest_idx[lane.destination]
        lane_arcs.append(arc(u, v, total_required, lane.unit_cost))
    for j, record in enumerate(scenario.destinations):
        arc(1 + n_sup + j, sink, record.required, 0)

    potential = [0] * n_nodes
    prev_arc = [-1] * n_nodes
    unreached = float("inf")

    pushed = 0
    while pushed < total_required:
        if cancel is not None and cancel.cancelled:
            raise SolveCancelled("solve cancelled")

        dist: list[float] = [unreached] * n_nodes
        dist[source] = 0
        done = [False] * n_nodes
        heap: list[tuple[int, int]] = [(0, source)]
        while heap:
            d, u = heappop(heap)
            if done[u]:
                continue
            done[u] = True
            if u == sink:
                break
            pu = potential[u]
            for index in adj[u]:
                if caps[index] <= 0:
                    continue
                v = heads[index]
                if done[v]:
                    continue
                nd = d + costs[index] + pu - potential[v]
                if nd < dist[v]:
                    dist[v] = nd
                    prev_arc[v] = index
                    heappush(heap, (nd, v))
        if not done[sink]:
            return SolveResult(INFEASIBLE, {}, None)

        d_sink = dist[sink]
        for v in range(n_nodes):
            dv = dist[v]
            potential[v] += dv if done[v] else d_sink  # keep reduced costs non-negative

        bottleneck = total_required - pushed
        v = sink
        while v != source:
            index = prev_arc[v]
            if caps[index] < bottleneck:
                bottleneck = caps[index]
            v = heads[index ^ 1]
        v = sink
        while v != source:
            index = prev_arc[v]
            caps[index] -= bottleneck
            caps[index ^ 1] += bottleneck
            v = heads[index ^ 1]
        pushed += bottleneck

    plan: dict[LaneKey, int] = {}
    objective = 0
    for lane, index in zip(scenario.lanes, lane_arcs):
        flow = caps[index ^ 1]  # reverse capacity equals flow pushed
        if flow > 0:
            plan[lane.key] = flow
            objective += flow * lane.unit_cost
    return SolveResult(OPTIMAL, plan, objective)


def _allocations(required: int, limits: list[int]) -> Iterator[tuple[int, ...]]:
    """All ways to split ``required`` units across slots with caps."""
    if not limits:
        if required == 0:
            yield ()
        return
    head_limit = min(limits[0], required)
    for q in range(head_limit + 1):
        for rest in _allocations(required - q, limits[1:]):
            yield (q,) + rest


def oracle_solve(scenario: Scenario) -> SolveResult:
    """Exact optimum of a tiny instance by exhaustive enumeration.

    Walks destinations in order, enumerating every split of each
    requirement across its incoming lanes, memoized on the remaining
    capacity vector. Only for cross-checking the real solver in tests.
    """
    suppliers = scenario.suppliers
    destinations = scenario.destinations
    if len(suppliers) > ORACLE_MAX_SIDE or len(destinations) > ORACLE_MAX_SIDE:
        raise OracleBoundsError(f"oracle handles at most {ORACLE_MAX_SIDE}x{ORACLE_MAX_SIDE} instances")
    if any(record.capacity > ORACLE_MAX_VALUE for record in suppliers) or any(
        record.required > ORACLE_MAX_VALUE for record in destinations
    ):
        raise OracleBoundsError(f"oracle handles capacities and requirements up to {ORACLE_MAX_VALUE}")

    sup_idx = {record.name: i for i, record in enumerate(suppliers)}
    lanes_into: list[list[tuple[int, int, LaneKey]]] = [[] for _ in destinations]
    for j, record in enumerate(destinations):
        for lane in scenario.lanes:
            if lane.destination == record.name:
                lanes_into[j].append((sup_idx[lane.supplier], lane.unit_cost, lane.key))

    memo: dict[tuple[int, tuple[int, ...]], tuple[int, tuple[int, ...]] | None] = {}

    def best(j: int, caps: tuple[int, ...]) -> tuple[int, tuple[int, ...]] | None:
        if j == len(destinations):
            return (0, ())
        state = (j, caps)
        if state in memo:
            return memo[state]
        need = destinations[j].required
        lanes = lanes_into[j]
        winner: tuple[int, tuple[int, ...]] | None = None
        for alloc in _allocations(need, [caps[s] for s, _, _ in lanes]):
            next_caps = list(caps)
            cost_here = 0
            for q, (s, unit_cost, _) in zip(alloc, lanes):
                next_caps[s] -= q
                cost_here += q * unit_cost
            tail = best(j + 1, tuple(next_caps))
            if tail is None:
                continue
            total = cost_here + tail[0]
            if winner is None or total < winner[0]:
                winner = (total, alloc)
        memo[state] = winner
        return winner

    caps0 = tuple(record.capacity for record in suppliers)
    outcome = best(0, caps0)
    if outcome is None:
        return SolveResult(INFEASIBLE, {}, None)

    plan: dict[LaneKey, int] = {}
    caps = caps0
    for j in range(len(destinations)):
        entry = memo[(j, caps)]
        assert entry is not None
        _, alloc = entry
        next_caps = list(caps)
        for q, (s, _, key) in zip(alloc, lanes_into[j]):
            next_caps[s] -= q
            if q > 0:
                plan[key] = q
        caps = tuple(next_caps)
    return SolveResult(OPTIMAL, plan, outcome[0])
