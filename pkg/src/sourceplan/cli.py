"""Command-line entry point for batch use and for launching the service.

Commands mirror the library one-to-one: ingest, validate, eval, report,
mutate, solve, serve.  JSON output is exactly what the library's to_json
methods produce, so piping CLI output and calling the modules directly give
byte-identical results.  No command modifies its input file; new scenario
files are only written through --out.

Exit codes: 0 success; 1 findings (validate saw violations, solve was
infeasible); 2 usage error; 3 unreadable or unparsable input.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .evaluate import Evaluation, evaluate
from .ingest import IngestError, ingest_text
from .model import Scenario, ScenarioFormatError, scenario_from_json, scenario_to_json, validate
from .mutate import MutationError, apply_script
from .report import matrix_report, render_csv, render_text
from .service import DEFAULT_HOST, DEFAULT_PORT, create_app
from .solver import INFEASIBLE, apply_plan, solve_min_cost

EXIT_OK = 0
EXIT_FINDINGS = 1
EXIT_USAGE = 2
EXIT_INPUT = 3


def _fail(message: str) -> "SystemExit":
    click.echo(f"error: {message}", err=True)
    return SystemExit(EXIT_INPUT)


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _fail(f"cannot read {path}: {exc.strerror or exc}") from None


def _load_scenario(path: str, require_valid: bool = True) -> Scenario:
    try:
        scenario = scenario_from_json(_read_text(path))
    except ScenarioFormatError as exc:
        raise _fail(f"{path}: {exc}") from None
    if require_valid:
        violations = validate(scenario)
        if violations:
            raise _fail(
                f"{path}: scenario fails validation ({len(violations)} violation(s)); "
                "run `sourceplan validate` for the list"
            ) from None
    return scenario


def _write_scenario(scenario: Scenario, out: str | None) -> None:
    text = scenario_to_json(scenario)
    if out is None:
        click.echo(text, nl=False)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _evaluation_text(evaluation: Evaluation) -> str:
    lines = []

    def block(title: str, entries: dict[str, int]) -> None:
        lines.append(title)
        if not entries:
            lines.append("  (none)")
            return
        width = max(len(name) for name in entries)
        for name, units in entries.items():
            lines.append(f"  {name:<{width}}  {units}")

    block("Supplied", dict(evaluation.supplied))
    block("Delivered", dict(evaluation.delivered))
    block("Excess Capacity", dict(evaluation.excess_capacity))
    lines.append("Diagnostics")
    if evaluation.diagnostics:
        for diag in evaluation.diagnostics:
            lines.append(f"  {diag.kind}  {diag.subject}  {diag.amount}")
    else:
        lines.append("  (none)")
    lines.append(f"Total Sourcing Cost: {evaluation.to_dict()['total_cost']}")
    return "\n".join(lines)


@click.group()
def cli() -> None:
    """Sourcing-plan workbench: ingest, evaluate, reshape, report, and solve."""


@cli.command()
@click.argument("raw_file")
@click.option("--plan-default", type=click.IntRange(min=0), default=1000, show_default=True,
              help="Starting quantity written into every lane's plan entry.")
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="Write the scenario here instead of standard output.")
def ingest(raw_file: str, plan_default: int, out: str | None) -> None:
    """Parse a raw supplier document into a scenario file."""
    text = _read_text(raw_file)
    try:
        scenario = ingest_text(text, plan_default=plan_default)
    except IngestError as exc:
        raise _fail(f"{raw_file}: {exc}") from None
    _write_scenario(scenario, out)


@cli.command("validate")
@click.argument("scenario_file")
def validate_command(scenario_file: str) -> None:
    """Check a scenario file; print one line per violation."""
    scenario = _load_scenario(scenario_file, require_valid=False)
    violations = validate(scenario)
    for violation in violations:
        click.echo(f"{violation.rule}: {violation.message}")
    if violations:
        raise SystemExit(EXIT_FINDINGS)


@cli.command("eval")
@click.argument("scenario_file")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text",
              show_default=True)
def eval_command(scenario_file: str, fmt: str) -> None:
    """Evaluate a scenario: totals, margins, diagnostics."""
    scenario = _load_scenario(scenario_file)
    evaluation = evaluate(scenario)
    if fmt == "json":
        click.echo(evaluation.to_json(), nl=False)
    else:
        click.echo(_evaluation_text(evaluation))


@cli.command()
@click.argument("scenario_file")
@click.option("--format", "fmt", type=click.Choice(["text", "csv"]), default="text",
              show_default=True)
def report(scenario_file: str, fmt: str) -> None:
    """Render the matrix report for a scenario."""
    scenario = _load_scenario(scenario_file)
    rendered = matrix_report(scenario)
    if fmt == "csv":
        click.echo(render_csv(rendered), nl=False)
    else:
        click.echo(render_text(rendered))


@cli.command()
@click.argument("scenario_file")
@click.argument("script_file")
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="Write the mutated scenario here instead of standard output.")
def mutate(scenario_file: str, script_file: str, out: str | None) -> None:
    """Apply a mutation script to a scenario, all steps or none."""
    scenario = _load_scenario(scenario_file)
    try:
        script = json.loads(_read_text(script_file))
    except json.JSONDecodeError as exc:
        raise _fail(f"{script_file}: not valid JSON: {exc}") from None
    try:
        mutated = apply_script(scenario, script)
    except MutationError as exc:
        raise _fail(f"{script_file}: {exc}") from None
    _write_scenario(mutated, out)


@cli.command()
@click.argument("scenario_file")
@click.option("--apply", "apply_result", is_flag=True,
              help="Install the optimal plan and write the scenario to --out.")
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="Where --apply writes the solved scenario.")
def solve(scenario_file: str, apply_result: bool, out: str | None) -> None:
    """Compute a minimum-cost plan; print the result as JSON."""
    if apply_result and out is None:
        raise click.UsageError("--apply needs --out (input files are never rewritten)")
    if out is not None and not apply_result:
        raise click.UsageError("--out only makes sense together with --apply")
    scenario = _load_scenario(scenario_file)
    result = solve_min_cost(scenario)
    click.echo(result.to_json(), nl=False)
    if result.status == INFEASIBLE:
        raise SystemExit(EXIT_FINDINGS)
    if apply_result:
        _write_scenario(apply_plan(scenario, result.plan), out)


@cli.command()
@click.option("--host", default=DEFAULT_HOST, show_default=True)
@click.option("--port", type=int, default=DEFAULT_PORT, show_default=True)
@click.option("--snapshot", type=click.Path(dir_okay=False), default=None,
              help="Persist scenarios to this file across restarts.")
def serve(host: str, port: int, snapshot: str | None) -> None:
    """Run the HTTP service."""
    import uvicorn

    uvicorn.run(create_app(snapshot), host=host, port=port, log_level="info")


def main() -> None:
    cli(prog_name="sourceplan")


if __name__ == "__main__":
    main()
