import json
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from mpmath import mp

DATA = Path(__file__).parent / "data"

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(autouse=True)
def _precision():
    """Every test starts at 256 bits and cannot leak a precision change."""
    with mp.workprec(256):
        yield


@pytest.fixture(scope="session")
def oracles():
    return json.loads((DATA / "oracles.json").read_text())


ACCEPTANCE_LINES = {}


@pytest.fixture
def criterion(request):
    """``criterion(n, ok, detail)`` records one pass/fail line for the acceptance summary."""
    def record(n, ok, detail):
        line = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES[n] = line
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
