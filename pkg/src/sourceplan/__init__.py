"""Sourcing-plan workbench.

Normalized supplier/destination/lane tables with an editable sourcing
plan: ingest raw data, evaluate cost and coverage, restructure scenarios
without touching evaluation logic, pivot to the matrix view, and compute
minimum-cost plans. Serve it all over HTTP with ``sourceplan serve``.
"""

from .evaluate import Diagnostic, Evaluation, delivered, evaluate, supplied, total_cost
from .ingest import (
    DEFAULT_PLAN_QUANTITY,
    IngestError,
    NormalizeError,
    ParseError,
    RawRow,
    RequirementRow,
    ingest_text,
    normalize,
    parse_raw,
)
from .model import (
    DestinationRecord,
    Lane,
    Scenario,
    ScenarioFormatError,
    SupplierRecord,
    Violation,
    lane_lookup,
    scenario_from_dict,
    scenario_from_json,
    scenario_to_dict,
    scenario_to_json,
    validate,
)
from .money import format_money, parse_money, parse_units
from .mutate import (
    CascadeReport,
    DuplicateLaneError,
    DuplicateNameError,
    MissingLaneError,
    MutationError,
    NegativeValueError,
    ScriptError,
    UnknownNameError,
    add_destination,
    add_lane,
    add_supplier,
    apply_script,
    remove_destination,
    remove_lane,
    remove_supplier,
    set_capacity,
    set_required,
    set_shipment,
    set_unit_cost,
)
from .report import MatrixReport, flatten, matrix_report, render_csv, render_text
from .solver import (
    CancellationToken,
    OracleBoundsError,
    SolveCancelled,
    SolveResult,
    apply_plan,
    oracle_solve,
    solve_min_cost,
)

__version__ = "0.1.0"

__all__ = [
    "CancellationToken",
    "CascadeReport",
    "DEFAULT_PLAN_QUANTITY",
    "DestinationRecord",
    "Diagnostic",
    "DuplicateLaneError",
    "DuplicateNameError",
    "Evaluation",
    "IngestError",
    "Lane",
    "MatrixReport",
    "MissingLaneError",
    "MutationError",
    "NegativeValueError",
    "NormalizeError",
    "OracleBoundsError",
    "ParseError",
    "RawRow",
    "RequirementRow",
    "Scenario",
    "ScenarioFormatError",
    "ScriptError",
    "SolveCancelled",
    "SolveResult",
    "SupplierRecord",
    "UnknownNameError",
    "Violation",
    "add_destination",
    "add_lane",
    "add_supplier",
    "apply_plan",
    "apply_script",
    "delivered",
    "evaluate",
    "flatten",
    "format_money",
    "ingest_text",
    "lane_lookup",
    "matrix_report",
    "normalize",
    "oracle_solve",
    "parse_money",
    "parse_raw",
    "parse_units",
    "remove_destination",
    "remove_lane",
    "remove_supplier",
    "render_csv",
    "render_text",
    "scenario_from_dict",
    "scenario_from_json",
    "scenario_to_dict",
    "scenario_to_json",
    "set_capacity",
    "set_required",
    "set_shipment",
    "set_unit_cost",
    "solve_min_cost",
    "supplied",
    "total_cost",
    "validate",
]
