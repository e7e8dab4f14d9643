import numpy as np
import pytest

from chevron.profiles import DimensionlessProfile, StationMeta


def make_profile(eta, phi, **meta) -> DimensionlessProfile:
    return DimensionlessProfile(StationMeta(**meta), np.asarray(eta, float), np.asarray(phi, float))


@pytest.fixture
def power_law_profile():
    eta = np.logspace(np.log10(30), 4, 20)
    return make_profile(eta, 8.53 * eta ** 0.143, station_id="pl")


ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
