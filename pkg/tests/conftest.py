import os
import random

import pytest
from hypothesis import HealthCheck, settings

from wittkit.field import GF, QQ
from wittkit.ring import ring

settings.register_profile(
    "repo",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "repo"))

GOLDEN = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "golden")

@pytest.fixture
def rng():
    return random.Random(1234)

@pytest.fixture(scope="session")
def qq():
    return ring("", field=QQ)

@pytest.fixture(scope="session")
def f5():
    return ring("", field=GF(5))

@pytest.fixture(scope="session")
def f13():
    return ring("", field=GF(13))

@pytest.fixture(scope="session")
def qxy():
    return ring("x y")

@pytest.fixture(scope="session")
def sqrt2():
    return ring("x", ["x^2 - 2"])


def pytest_terminal_summary(terminalreporter):
    results = getattr(__import__("sys").modules.get("test_acceptance"), "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for line in results:
            terminalreporter.write_line(line)
