import os

import pytest
from hypothesis import HealthCheck, settings

from lagderham.varieties import curve_ring, lag_ideal, plane_curve

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", deadline=None, max_examples=200,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ACCEPTANCE_LINES: list = []


@pytest.fixture(scope="session")
def cusp():
    return plane_curve(curve_ring(2, 3).parse("p^2 - q^3"), tag={"name": "cusp"})


@pytest.fixture(scope="session")
def a4():
    return plane_curve(curve_ring(2, 5).parse("p^2 - q^5"), tag={"name": "A4"})


@pytest.fixture(scope="session")
def smooth():
    return plane_curve(curve_ring(1, 1).parse("p"), tag={"name": "zero-section"})


@pytest.fixture(scope="session")
def sigma11():
    return lag_ideal(1, 1)


@pytest.fixture(scope="session")
def sigma21():
    return lag_ideal(2, 1)


@pytest.fixture(scope="session")
def sigma22():
    return lag_ideal(2, 2)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
