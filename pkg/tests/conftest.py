import math
from pathlib import Path

import numpy as np
import pytest

from mixent.states import PureState

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"
GOLDEN = Path(__file__).resolve().parent / "golden"

R2 = 1 / math.sqrt(2)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")
    config._criteria = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or rep.when != "call":
        return
    detail = "; ".join(f"{k}={v}" for k, v in item.user_properties)
    item.config._criteria.append((marker.args[0], marker.args[1], rep.passed, detail))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    rows = sorted(config._criteria)
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, detail in rows:
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{status}] {number:>2}. {title}" + (f" ({detail})" if detail else ""))


@pytest.fixture
def bell() -> PureState:
    return PureState(R2, 0, 0, R2)


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def golden_dir() -> Path:
    return GOLDEN


def schmidt_mix(c1: float, c2: float, omega: float) -> np.ndarray:
    """Mixed Schmidt-form matrix transcribed entry by entry."""
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = (1 - omega) * c1**2 + omega / 4
    m[1, 1] = m[2, 2] = omega / 4
    m[3, 3] = (1 - omega) * c2**2 + omega / 4
    m[0, 3] = m[3, 0] = (1 - omega) * c1 * c2
    return m
