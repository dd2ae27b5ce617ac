"""Local HTTP facade over scenarios: load, inspect, edit, evaluate, report, solve.

The service holds scenarios in memory under opaque ids.  Every successful
mutation bumps the scenario's version by exactly one; writers state the
version they expect (``Expected-Version`` header) and stale writes are
refused with 409 so two clients can never silently overwrite each other.
Reads are lock-free: scenarios are immutable values, so a handler can hand
out the current snapshot without caring what writers do next.

Bodies are read as raw bytes and parsed by hand — POST /scenarios accepts
either a raw supplier document or a canonical scenario serialization, and
the error contract distinguishes malformed bodies (400) from scenarios
that parse but fail validation (422, detail carries the violation list).
Unknown ids map to 404 and stale versions to 409.  All errors share one
envelope: ``{"code": ..., "message": ..., "detail": ...}``.

An optional snapshot file makes scenarios survive restarts: the store is
written out on shutdown and read back on start.  It is a convenience, not
a database — the workbench is a localhost tool.
"""

from __future__ import annotations

import json
import threading
import uuid
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from starlette.concurrency import run_in_threadpool

from .evaluate import evaluate
from .ingest import IngestError, ingest_text
from .model import (
    Scenario,
    ScenarioFormatError,
    scenario_from_dict,
    scenario_to_dict,
    validate,
)
from .mutate import MutationError, ScriptError, apply_script, set_shipment
from .report import matrix_report
from .solver import OPTIMAL, CancellationToken, SolveCancelled, solve_min_cost

DEFAULT_HOST = "127.0.0.1"
DEFAULT_PORT = 7411

EXPECTED_VERSION_HEADER = "Expected-Version"


@dataclass
class StoredScenario:
    """A scenario under service management: value plus version plus writer lock."""

    id: str
    version: int
    scenario: Scenario
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)


class ScenarioStore:
    """In-memory id -> scenario map with optional snapshot persistence."""

    def __init__(self) -> None:
        self._items: dict[str, StoredScenario] = {}
        self._registry_lock = threading.Lock()

    def create(self, scenario: Scenario) -> StoredScenario:
        with self._registry_lock:
            scenario_id = uuid.uuid4().hex[:12]
            while scenario_id in self._items:  # pragma: no cover - vanishing odds
                scenario_id = uuid.uuid4().hex[:12]
            item = StoredScenario(id=scenario_id, version=1, scenario=scenario)
            self._items[scenario_id] = item
            return item

    def get(self, scenario_id: str) -> StoredScenario | None:
        with self._registry_lock:
            return self._items.get(scenario_id)

    def load_snapshot(self, path: Path) -> None:
        document = json.loads(path.read_text(encoding="utf-8"))
        items = {}
        for scenario_id, entry in document["scenarios"].items():
            items[scenario_id] = StoredScenario(
                id=scenario_id,
                version=int(entry["version"]),
                scenario=scenario_from_dict(entry["scenario"]),
            )
        with self._registry_lock:
            self._items = items

    def save_snapshot(self, path: Path) -> None:
        with self._registry_lock:
            entries = {
                item.id: {"version": item.version, "scenario": scenario_to_dict(item.scenario)}
                for item in self._items.values()
            }
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps({"scenarios": entries}, indent=2) + "\n", encoding="utf-8")


def _error(status: int, code: str, message: str, detail: Any = None) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={"code": code, "message": message, "detail": detail},
    )


def _not_found(scenario_id: str) -> JSONResponse:
    return _error(404, "unknown_scenario", f"no scenario with id {scenario_id!r}")


def _stale(expected: int, current: int) -> JSONResponse:
    return _error(
        409,
        "stale_version",
        "scenario has moved on; refetch and retry",
        {"expected": expected, "current": current},
    )


class _BadExpectedVersion(Exception):
    pass


def _expected_version(request: Request) -> int | None:
    text = request.headers.get(EXPECTED_VERSION_HEADER)
    if text is None:
        return None
    try:
        return int(text.strip())
    except ValueError:
        raise _BadExpectedVersion() from None


def create_app(snapshot_path: str | Path | None = None) -> FastAPI:
    store = ScenarioStore()
    snapshot = Path(snapshot_path) if snapshot_path is not None else None

    async def lifespan(app: FastAPI):
        if snapshot is not None and snapshot.exists():
            store.load_snapshot(snapshot)
        yield
        if snapshot is not None:
            store.save_snapshot(snapshot)

    app = FastAPI(title="sourceplan service", lifespan=lifespan)
    app.state.store = store

    @app.exception_handler(RequestValidationError)
    async def malformed_request(request: Request, exc: RequestValidationError) -> JSONResponse:
        return _error(400, "malformed_request", "request did not match the endpoint contract", exc.errors())

    # Handlers that need the request body read it on the event loop, then run
    # their real (blocking) work on the threadpool so that a long solve or a
    # held writer lock never stalls unrelated requests.

    def _create_scenario(raw: bytes, plan_default: int) -> JSONResponse:
        try:
            text = raw.decode("utf-8")
        except UnicodeDecodeError:
            return _error(400, "malformed_body", "body is not valid UTF-8")
        if not text.strip():
            return _error(400, "malformed_body", "empty body")

        if text.lstrip().startswith("{"):
            try:
                document = json.loads(text)
            except json.JSONDecodeError as exc:
                return _error(400, "malformed_body", f"body is not valid JSON: {exc}")
            try:
                scenario = scenario_from_dict(document)
            except ScenarioFormatError as exc:
                return _error(400, "scenario_format", str(exc))
            violations = validate(scenario)
            if violations:
                return _error(
                    422,
                    "validation_failed",
                    "scenario failed validation",
                    [v.to_dict() for v in violations],
                )
        else:
            if plan_default < 0:
                return _error(400, "malformed_request", "plan_default must be non-negative")
            try:
                scenario = ingest_text(text, plan_default=plan_default)
            except IngestError as exc:
                return _error(
                    400,
                    "ingest_failed",
                    str(exc),
                    {"line": exc.line, "reason": exc.reason},
                )

        item = store.create(scenario)
        return JSONResponse(status_code=201, content={"id": item.id, "version": item.version})

    @app.post("/scenarios")
    async def post_scenario(request: Request, plan_default: int = 1000):
        raw = await request.body()
        return await run_in_threadpool(_create_scenario, raw, plan_default)

    @app.get("/scenarios/{scenario_id}")
    def get_scenario(scenario_id: str):
        item = store.get(scenario_id)
        if item is None:
            return _not_found(scenario_id)
        return JSONResponse(
            {"id": item.id, "version": item.version, "scenario": scenario_to_dict(item.scenario)}
        )

    @app.get("/scenarios/{scenario_id}/evaluation")
    def get_evaluation(scenario_id: str):
        item = store.get(scenario_id)
        if item is None:
            return _not_found(scenario_id)
        return JSONResponse(evaluate(item.scenario).to_dict())

    @app.get("/scenarios/{scenario_id}/report/matrix")
    def get_matrix_report(scenario_id: str):
        item = store.get(scenario_id)
        if item is None:
            return _not_found(scenario_id)
        return JSONResponse(matrix_report(item.scenario).to_dict())

    def _apply_mutations(scenario_id: str, expected: int | None, raw: bytes) -> JSONResponse:
        item = store.get(scenario_id)
        if item is None:
            return _not_found(scenario_id)
        if expected is None:
            return _error(
                400,
                "missing_expected_version",
                f"mutation posts require the {EXPECTED_VERSION_HEADER} header",
            )
        try:
            script = json.loads(raw.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            return _error(400, "malformed_body", f"body is not valid JSON: {exc}")

        with item.lock:
            if expected != item.version:
                return _stale(expected, item.version)
            try:
                mutated = apply_script(item.scenario, script)
            except ScriptError as exc:
                return _error(400, "script_error", str(exc))
            except MutationError as exc:
                return _error(422, "mutation_failed", str(exc))
            item.scenario = mutated
            item.version += 1
            return JSONResponse({"version": item.version})

    @app.post("/scenarios/{scenario_id}/mutations")
    async def post_mutations(scenario_id: str, request: Request):
        try:
            expected = _expected_version(request)
        except _BadExpectedVersion:
            return _error(400, "malformed_request", f"{EXPECTED_VERSION_HEADER} must be an integer")
        raw = await request.body()
        return await run_in_threadpool(_apply_mutations, scenario_id, expected, raw)

    def _set_plan_cell(
        scenario_id: str, supplier: str, destination: str, expected: int | None, raw: bytes
    ) -> JSONResponse:
        item = store.get(scenario_id)
        if item is None:
            return _not_found(scenario_id)
        try:
            document = json.loads(raw.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            return _error(400, "malformed_body", f"body is not valid JSON: {exc}")
        if isinstance(document, dict):
            document = document.get("quantity")
        if not isinstance(document, int) or isinstance(document, bool):
            return _error(400, "malformed_body", "body must be an integer quantity")

        with item.lock:
            if expected is not None and expected != item.version:
                return _stale(expected, item.version)
            try:
                mutated = set_shipment(item.scenario, supplier, destination, document)
            except MutationError as exc:
                return _error(422, "mutation_failed", str(exc))
            item.scenario = mutated
            item.version += 1
            return JSONResponse(
                {"version": item.version, "evaluation": evaluate(mutated).to_dict()}
            )

    @app.put("/scenarios/{scenario_id}/plan/{supplier}/{destination}")
    async def put_plan_cell(scenario_id: str, supplier: str, destination: str, request: Request):
        try:
            expected = _expected_version(request)
        except _BadExpectedVersion:
            return _error(400, "malformed_request", f"{EXPECTED_VERSION_HEADER} must be an integer")
        raw = await request.body()
        return await run_in_threadpool(
            _set_plan_cell, scenario_id, supplier, destination, expected, raw
        )

    def _solve(scenario_id: str, apply: bool, budget_ms: int | None) -> JSONResponse:
        item = store.get(scenario_id)
        if item is None:
            return _not_found(scenario_id)
        if budget_ms is not None and budget_ms <= 0:
            return _error(400, "malformed_request", "budget_ms must be positive")

        token = CancellationToken()
        timer: threading.Timer | None = None
        if budget_ms is not None:
            timer = threading.Timer(budget_ms / 1000.0, token.cancel)
            timer.start()
        try:
            if not apply:
                result = solve_min_cost(item.scenario, cancel=token)
                body = result.to_dict()
                body["version"] = item.version
                return JSONResponse(body)
            with item.lock:
                result = solve_min_cost(item.scenario, cancel=token)
                if result.status == OPTIMAL:
                    item.scenario = Scenario(
                        suppliers=item.scenario.suppliers,
                        destinations=item.scenario.destinations,
                        lanes=item.scenario.lanes,
                        plan=result.plan,
                    )
                    item.version += 1
                body = result.to_dict()
                body["version"] = item.version
                return JSONResponse(body)
        except SolveCancelled:
            return _error(503, "solve_cancelled", "solve exceeded its budget and was cancelled")
        finally:
            if timer is not None:
                timer.cancel()

    @app.post("/scenarios/{scenario_id}/solve")
    async def post_solve(scenario_id: str, apply: bool = False, budget_ms: int | None = None):
        return await run_in_threadpool(_solve, scenario_id, apply, budget_ms)

    return app
