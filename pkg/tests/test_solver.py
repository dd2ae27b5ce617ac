import random
import time

import pytest

from sourceplan import (
    DestinationRecord,
    Lane,
    Scenario,
    SupplierRecord,
    evaluate,
    validate,
)
from sourceplan.solver import (
    INFEASIBLE,
    OPTIMAL,
    ORACLE_MAX_SIDE,
    ORACLE_MAX_VALUE,
    CancellationToken,
    OracleBoundsError,
    SolveCancelled,
    apply_plan,
    oracle_solve,
    solve_min_cost,
)


def instance(capacities, requirements, lane_costs, plan=None) -> Scenario:
    """lane_costs: {(supplier_index, destination_index): cents}"""
    suppliers = tuple(SupplierRecord(f"S{i}", c) for i, c in enumerate(capacities))
    destinations = tuple(DestinationRecord(f"D{j}", r) for j, r in enumerate(requirements))
    lanes = tuple(Lane(f"S{i}", f"D{j}", cost) for (i, j), cost in sorted(lane_costs.items()))
    return Scenario(suppliers, destinations, lanes, plan or {})


def random_oracle_instance(rng: random.Random) -> Scenario:
    n_sup = rng.randint(1, ORACLE_MAX_SIDE)
    n_dest = rng.randint(1, ORACLE_MAX_SIDE)
    capacities = [rng.randint(0, ORACLE_MAX_VALUE) for _ in range(n_sup)]
    requirements = [rng.randint(0, ORACLE_MAX_VALUE) for _ in range(n_dest)]
    lane_costs = {
        (i, j): rng.randint(0, 500)
        for i in range(n_sup)
        for j in range(n_dest)
        if rng.random() < 0.75
    }
    return instance(capacities, requirements, lane_costs)


def assert_result_is_sound(scenario: Scenario, result) -> None:
    """Feasibility and integrality of a claimed optimum, checked from scratch."""
    assert result.status == OPTIMAL
    applied = apply_plan(scenario, result.plan)
    assert validate(applied) == []
    ev = evaluate(applied)
    assert ev.diagnostics == ()  # demand met exactly, no capacity breach
    assert ev.total_cost == result.objective
    assert all(isinstance(q, int) and q > 0 for q in result.plan.values())


class TestSmallInstances:
    def test_forced_single_lane(self):
        result = solve_min_cost(instance([10], [5], {(0, 0): 200}))
        assert result.status == OPTIMAL
        assert dict(result.plan) == {("S0", "D0"): 5}
        assert result.objective == 1000

    def test_aggregate_shortage_is_infeasible(self):
        result = solve_min_cost(instance([3], [5], {(0, 0): 100}))
        assert result.status == INFEASIBLE
        assert dict(result.plan) == {} and result.objective is None

    def test_lane_structure_bottleneck_is_infeasible(self):
        # plenty of aggregate capacity, but D1 is unreachable
        result = solve_min_cost(instance([50, 50], [5, 5], {(0, 0): 100, (1, 0): 100}))
        assert result.status == INFEASIBLE

    def test_tight_reachability(self):
        # D1 reachable only from S1, which exactly covers it
        result = solve_min_cost(instance([8, 5], [8, 5], {(0, 0): 100, (1, 0): 900, (1, 1): 100}))
        assert result.status == OPTIMAL
        assert dict(result.plan) == {("S0", "D0"): 8, ("S1", "D1"): 5}

    def test_zero_requirement_means_empty_plan(self):
        result = solve_min_cost(instance([5, 5], [0, 0], {(0, 0): 100}))
        assert result.status == OPTIMAL
        assert dict(result.plan) == {} and result.objective == 0

    def test_empty_scenario(self):
        result = solve_min_cost(Scenario())
        assert result.status == OPTIMAL and result.objective == 0

    def test_cheaper_detour_wins(self):
        # shipping both units through S0 is cheaper than the direct split
        result = solve_min_cost(
            instance([2, 2], [1, 1], {(0, 0): 100, (0, 1): 110, (1, 0): 500, (1, 1): 500})
        )
        assert result.objective == 210

    def test_unused_suppliers_and_destinations_are_fine(self):
        scenario = instance([5, 9], [5, 0], {(0, 0): 100})
        result = solve_min_cost(scenario)
        assert result.status == OPTIMAL
        assert dict(result.plan) == {("S0", "D0"): 5}

    def test_current_plan_is_ignored(self):
        lanes = {(0, 0): 100, (0, 1): 110, (1, 0): 500, (1, 1): 500}
        blank = solve_min_cost(instance([2, 2], [1, 1], lanes))
        seeded = solve_min_cost(
            instance([2, 2], [1, 1], lanes, plan={("S1", "D0"): 1, ("S1", "D1"): 1})
        )
        assert blank == seeded

    def test_determinism(self):
        rng = random.Random(33)
        for _ in range(20):
            scenario = random_oracle_instance(rng)
            first = solve_min_cost(scenario)
            second = solve_min_cost(scenario)
            assert first == second


class TestGolden(object):
    def test_base_scenario_matches_independent_lp(self, base_scenario, solver_golden):
        result = solve_min_cost(base_scenario)
        assert result.status == solver_golden["status"] == OPTIMAL
        assert result.objective == solver_golden["objective_cents"]
        assert result.to_dict()["objective"] == solver_golden["objective"]
        assert_result_is_sound(base_scenario, result)

    def test_golden_plan_is_itself_feasible(self, base_scenario, solver_golden):
        plan = {(e["supplier"], e["destination"]): e["quantity"] for e in solver_golden["plan"]}
        ev = evaluate(apply_plan(base_scenario, plan))
        assert ev.diagnostics == ()
        assert ev.total_cost == solver_golden["objective_cents"]


class TestOracle:
    def test_known_diagonal_optimum(self):
        scenario = instance([2, 2], [2, 2], {(0, 0): 100, (0, 1): 300, (1, 0): 300, (1, 1): 100})
        result = oracle_solve(scenario)
        assert result.status == OPTIMAL
        assert result.objective == 400
        assert dict(result.plan) == {("S0", "D0"): 2, ("S1", "D1"): 2}

    def test_infeasible_toy(self):
        assert oracle_solve(instance([1], [5], {(0, 0): 1})).status == INFEASIBLE

    def test_forced_instance_matches_solver(self):
        scenario = instance([10], [5], {(0, 0): 200})
        assert oracle_solve(scenario) == solve_min_cost(scenario)

    def test_bounds_enforced(self):
        with pytest.raises(OracleBoundsError):
            oracle_solve(instance([1, 1, 1, 1], [1], {(0, 0): 1}))
        with pytest.raises(OracleBoundsError):
            oracle_solve(instance([ORACLE_MAX_VALUE + 1], [1], {(0, 0): 1}))
        with pytest.raises(OracleBoundsError):
            oracle_solve(instance([1], [ORACLE_MAX_VALUE + 1], {(0, 0): 1}))

    def test_matches_solver_on_random_instances(self):
        rng = random.Random(271828)
        optimal_seen = infeasible_seen = 0
        for _ in range(80):
            scenario = random_oracle_instance(rng)
            fast = solve_min_cost(scenario)
            slow = oracle_solve(scenario)
            assert fast.status == slow.status
            assert fast.objective == slow.objective
            if fast.status == OPTIMAL:
                optimal_seen += 1
                assert_result_is_sound(scenario, fast)
                assert_result_is_sound(scenario, slow)
            else:
                infeasible_seen += 1
        # the generator must exercise both outcomes for this to mean much
        assert optimal_seen >= 10 and infeasible_seen >= 10


def random_feasible_plan(rng: random.Random, scenario: Scenario) -> dict | None:
    """Greedy random feasible plan, or None when the dice get stuck."""
    remaining = {s.name: s.capacity for s in scenario.suppliers}
    plan: dict = {}
    for record in scenario.destinations:
        need = record.required
        lanes = [lane for lane in scenario.lanes if lane.destination == record.name]
        rng.shuffle(lanes)
        for lane in lanes:
            take = min(need, remaining[lane.supplier])
            if take > 0:
                plan[lane.key] = take
                remaining[lane.supplier] -= take
                need -= take
        if need > 0:
            return None
    return plan


def test_objective_is_a_lower_bound():
    rng = random.Random(60902)
    checked = 0
    for _ in range(30):
        scenario = random_oracle_instance(rng)
        result = solve_min_cost(scenario)
        if result.status != OPTIMAL:
            continue
        for _ in range(50):
            plan = random_feasible_plan(rng, scenario)
            if plan is None:
                continue
            cost = evaluate(apply_plan(scenario, plan)).total_cost
            assert cost >= result.objective
            checked += 1
    assert checked > 200


class TestCancellation:
    def test_pre_cancelled_token(self, base_scenario):
        token = CancellationToken()
        token.cancel()
        with pytest.raises(SolveCancelled):
            solve_min_cost(base_scenario, cancel=token)

    def test_cancel_mid_solve(self):
        class TripsAfter:
            def __init__(self, n):
                self.left = n

            @property
            def cancelled(self):
                self.left -= 1
                return self.left < 0

        rng = random.Random(7)
        scenario = instance(
            [rng.randint(50, 99) for _ in range(30)],
            [rng.randint(1, 40) for _ in range(30)],
            {(i, j): rng.randint(1, 999) for i in range(30) for j in range(30)},
        )
        with pytest.raises(SolveCancelled):
            solve_min_cost(scenario, cancel=TripsAfter(3))
        # and an untouched token lets the same instance finish
        assert solve_min_cost(scenario, cancel=CancellationToken()).status == OPTIMAL

    def test_token_is_reusable_across_checks(self):
        token = CancellationToken()
        assert not token.cancelled
        token.cancel()
        assert token.cancelled


def test_moderate_scale_is_quick():
    rng = random.Random(11)
    n = 60
    capacities = [rng.randint(100, 900) for _ in range(n)]
    lane_costs = {
        (i, j): rng.randint(100, 9999) for i in range(n) for j in range(n) if rng.random() < 0.3
    }
    reachable = {j for _, j in lane_costs}
    requirements = [rng.randint(0, 300) if j in reachable else 0 for j in range(n)]
    scenario = instance(capacities, requirements, lane_costs)
    started = time.perf_counter()
    result = solve_min_cost(scenario)
    elapsed = time.perf_counter() - started
    assert result.status == OPTIMAL
    assert_result_is_sound(scenario, result)
    assert elapsed < 2.0
