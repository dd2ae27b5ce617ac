import csv
import io
import json
import random

from sourceplan import (
    DestinationRecord,
    Lane,
    Scenario,
    SupplierRecord,
    evaluate,
    flatten,
    matrix_report,
    render_csv,
    render_text,
)
from sourceplan.report import BLOCKED, COSTS_TITLE, PLAN_TITLE

from conftest import random_scenario


def present_cells(report):
    return [
        (i, j)
        for i in range(len(report.row_labels))
        for j in range(len(report.column_labels))
        if report.cost_cells[i][j] is not None
    ]


class TestPivot:
    def test_base_dimensions(self, base_scenario):
        report = matrix_report(base_scenario)
        assert len(report.row_labels) == 10
        assert report.column_labels == ("Abbot", "Bone", "Chest")
        assert len(present_cells(report)) == 13
        blocked = 10 * 3 - 13
        assert sum(row.count(None) for row in report.cost_cells) == blocked
        assert sum(row.count(None) for row in report.plan_cells) == blocked

    def test_base_cells(self, base_scenario):
        report = matrix_report(base_scenario)
        assert report.cost_cells[0][2] == 3080  # Georgican -> Chest
        assert report.cost_cells[0][0] is None  # Georgican -> Abbot is prohibited
        assert report.plan_cells[0][2] == 1000
        assert report.plan_cells[0][0] is None

    def test_margins_match_evaluation(self, base_scenario):
        report = matrix_report(base_scenario)
        ev = evaluate(base_scenario)
        assert report.supplied_margin == tuple(ev.supplied[r] for r in report.row_labels)
        assert report.delivered_margin == (4000, 5000, 4000)
        assert report.capacity_margin[0] == 2500
        assert report.required_margin == (32422, 21233, 25125)
        assert report.total_cost == ev.total_cost

    def test_extended_dimensions(self, extended_scenario):
        report = matrix_report(extended_scenario)
        assert len(report.row_labels) == 11 and len(report.column_labels) == 4
        assert len(present_cells(report)) == 16
        duluth = report.column_labels.index("Duluth")
        column = [
            (report.row_labels[i], report.cost_cells[i][duluth])
            for i in range(11)
            if report.cost_cells[i][duluth] is not None
        ]
        assert column == [("Paulucci", 3550)]

    def test_flatten_inverts_the_pivot(self, base_scenario):
        report = matrix_report(base_scenario)
        flattened = flatten(report)
        expected = [
            (lane.supplier, lane.destination, lane.unit_cost, base_scenario.shipment(*lane.key))
            for lane in base_scenario.lanes
        ]
        assert sorted(flattened) == sorted(expected)
        # base lanes arrive grouped by supplier, so even the order matches
        assert flattened == expected

    def test_zero_quantity_is_distinct_from_blocked(self):
        scenario = Scenario(
            suppliers=(SupplierRecord("A", 5),),
            destinations=(DestinationRecord("X", 1), DestinationRecord("Y", 1)),
            lanes=(Lane("A", "X", 100),),
            plan={("A", "X"): 0},
        )
        report = matrix_report(scenario)
        assert report.plan_cells[0] == (0, None)

    def test_empty_scenario(self):
        report = matrix_report(Scenario())
        assert report.row_labels == () and report.column_labels == ()
        assert report.total_cost == 0

    def test_random_pivot_invariants(self):
        rng = random.Random(5150)
        for _ in range(40):
            scenario = random_scenario(rng)
            report = matrix_report(scenario)
            n_cells = len(report.row_labels) * len(report.column_labels)
            blocked = sum(row.count(None) for row in report.cost_cells)
            assert blocked == n_cells - len(scenario.lanes)
            assert sum(report.supplied_margin) == sum(report.delivered_margin)
            present = [
                report.plan_cells[i][j] for i, j in present_cells(report)
            ]
            assert sum(report.supplied_margin) == sum(present)
            rebuilt_lanes = {(s, d, c) for s, d, c, _ in flatten(report)}
            assert rebuilt_lanes == {(l.supplier, l.destination, l.unit_cost) for l in scenario.lanes}


class TestSerialization:
    def test_to_dict_formats_money(self, base_scenario):
        doc = matrix_report(base_scenario).to_dict()
        assert doc["cost_cells"][0] == [None, None, "30.80"]
        assert doc["total_cost"] == "485930.00"
        assert doc["plan_cells"][0] == [None, None, 1000]

    def test_to_json_round_trips_nulls(self, base_scenario):
        doc = json.loads(matrix_report(base_scenario).to_json())
        assert doc["cost_cells"][0][0] is None


class TestTextRendering:
    def test_base_grid(self, base_scenario):
        text = render_text(matrix_report(base_scenario))
        lines = text.splitlines()
        assert lines[0] == COSTS_TITLE
        assert PLAN_TITLE in lines
        delivered = next(l for l in lines if l.startswith("Delivered"))
        assert delivered.split() == ["Delivered", "4000", "5000", "4000"]
        georgican_cost = next(l for l in lines if l.startswith("Georgican"))
        assert georgican_cost.split() == ["Georgican", BLOCKED, BLOCKED, "30.80", "2500"]
        assert lines[-1] == "Total Sourcing Cost: 485930.00"
        # blocked cells appear in both blocks: 17 each
        assert text.count(BLOCKED) == 2 * 17

    def test_margins_labelled(self, base_scenario):
        text = render_text(matrix_report(base_scenario))
        for label in ("Capacity", "Required", "Supplied", "Delivered"):
            assert label in text

    def test_zero_renders_as_zero(self):
        scenario = Scenario(
            suppliers=(SupplierRecord("A", 5),),
            destinations=(DestinationRecord("X", 1), DestinationRecord("Y", 1)),
            lanes=(Lane("A", "X", 100),),
            plan={("A", "X"): 0},
        )
        plan_block = render_text(matrix_report(scenario)).split(PLAN_TITLE)[1]
        row = next(l for l in plan_block.splitlines() if l.startswith("A"))
        assert row.split() == ["A", "0", BLOCKED, "0"]

    def test_empty_scenario_header_only(self):
        text = render_text(matrix_report(Scenario()))
        assert COSTS_TITLE in text and PLAN_TITLE in text
        assert text.endswith("Total Sourcing Cost: 0.00\n")


class TestCsvRendering:
    def parse_blocks(self, text):
        rows = list(csv.reader(io.StringIO(text)))
        split = rows.index([])
        return rows[:split], rows[split + 1 :]

    def test_two_blocks_identical_headers(self, base_scenario):
        costs, plan = self.parse_blocks(render_csv(matrix_report(base_scenario)))
        assert costs[0] == [COSTS_TITLE]
        assert plan[0] == [PLAN_TITLE]
        assert costs[1] == plan[1] == ["Supplier", "Abbot", "Bone", "Chest"]
        assert len(costs) == 2 + 10 and len(plan) == 2 + 10

    def test_cell_values(self, base_scenario):
        costs, plan = self.parse_blocks(render_csv(matrix_report(base_scenario)))
        georgican = costs[2]
        assert georgican == ["Georgican", "", "", "30.80"]  # blocked cells empty
        assert plan[2] == ["Georgican", "", "", "1000"]
        johnson = next(r for r in costs if r[0] == "Johnson")
        assert johnson == ["Johnson", "42.00", "41.60", "45.60"]

    def test_extended_block_shape(self, extended_scenario):
        costs, plan = self.parse_blocks(render_csv(matrix_report(extended_scenario)))
        data_rows = plan[2:]
        assert len(data_rows) == 11
        assert all(len(row) == 1 + 4 for row in data_rows)

    def test_round_trip_against_flatten(self, base_scenario):
        report = matrix_report(base_scenario)
        costs, plan = self.parse_blocks(render_csv(report))
        cells = []
        header = costs[1]
        for cost_row, plan_row in zip(costs[2:], plan[2:]):
            for j, dest in enumerate(header[1:], start=1):
                if cost_row[j]:
                    cents = round(float(cost_row[j]) * 100)
                    cells.append((cost_row[0], dest, cents, int(plan_row[j])))
        assert cells == flatten(report)
