from pathlib import Path

import pytest

from gmdm.kinematics import VehicleLimits

SCENARIOS = Path(__file__).resolve().parent.parent / "scenarios"


@pytest.fixture
def limits():
    return VehicleLimits(0.3, 1.0, 1.0)


@pytest.fixture
def scenario_dir():
    return SCENARIOS


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def verdict():
    """Record one PASS/FAIL line for an acceptance criterion, then assert it."""
    def check(number, ok, detail):
        line = f"ACCEPTANCE {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line
    return check


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
