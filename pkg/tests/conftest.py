import json
import random
from pathlib import Path

import pytest

from sourceplan import (
    DestinationRecord,
    Lane,
    Scenario,
    SupplierRecord,
    apply_script,
    ingest_text,
)

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def base_raw_text() -> str:
    return (DATA / "base_raw.csv").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def base_scenario(base_raw_text) -> Scenario:
    return ingest_text(base_raw_text)


@pytest.fixture(scope="session")
def extension_script() -> list:
    return json.loads((DATA / "extension_script.json").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def extended_scenario(base_scenario, extension_script) -> Scenario:
    return apply_script(base_scenario, extension_script)


@pytest.fixture(scope="session")
def solver_golden() -> dict:
    return json.loads((DATA / "base_solver_golden.json").read_text(encoding="utf-8"))


def random_scenario(
    rng: random.Random,
    max_side: int = 4,
    max_value: int = 30,
    lane_probability: float = 0.7,
    max_cost: int = 9999,
) -> Scenario:
    """A small random scenario; the plan covers a random subset of lanes."""
    n_sup = rng.randint(1, max_side)
    n_dest = rng.randint(1, max_side)
    suppliers = tuple(SupplierRecord(f"S{i}", rng.randint(0, max_value)) for i in range(n_sup))
    destinations = tuple(DestinationRecord(f"D{j}", rng.randint(0, max_value)) for j in range(n_dest))
    lanes = tuple(
        Lane(f"S{i}", f"D{j}", rng.randint(0, max_cost))
        for i in range(n_sup)
        for j in range(n_dest)
        if rng.random() < lane_probability
    )
    plan = {lane.key: rng.randint(0, max_value) for lane in lanes if rng.random() < 0.8}
    return Scenario(suppliers, destinations, lanes, plan)


@pytest.fixture(scope="session")
def make_random_scenario():
    return random_scenario
