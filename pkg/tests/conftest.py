import pytest

from cogcomplex.calibration import calibrate
from cogcomplex.complexity import GrowthParams, LinearExponent
from cogcomplex.presets import reference_scenarios
from cogcomplex.scenarios import Scenario


@pytest.fixture(scope="session")
def calibration():
    return calibrate()


@pytest.fixture(scope="session")
def scenarios(calibration):
    return reference_scenarios(calibration)


@pytest.fixture(scope="session")
def baseline(scenarios):
    return scenarios["baseline"]


@pytest.fixture
def toy_scenario():
    return Scenario(GrowthParams(1000.0, 5.0, 60.0), LinearExponent(), label="toy")


_ACCEPTANCE: list[str] = []


@pytest.fixture
def verdict():
    """Record and print one PASS/FAIL line, then assert it."""
    def record(criterion: str, ok: bool, detail: str) -> None:
        line = f"[{'PASS' if ok else 'FAIL'}] {criterion}: {detail}"
        _ACCEPTANCE.append(line)
        print(line)
        assert ok, line
    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
