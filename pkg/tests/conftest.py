import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from ripoly.biortho import Context
from ripoly.combiner import build_family
from ripoly.hyper import HyperParams, make_params

settings.register_profile("repo", deadline=None, derandomize=True, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")


@pytest.fixture(scope="session")
def hp():
    return HyperParams(0.5, 2.0)


@pytest.fixture(scope="session")
def hyper_family(hp):
    return build_family(make_params(hp), 13)


@pytest.fixture(scope="session")
def hyper_ctx(hyper_family):
    return Context(hyper_family)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_points(rng, m=20):
    z = rng.normal(size=m) + 1j * rng.normal(size=m)
    return np.where(np.abs(z) < 0.2, z + 0.5j, z)


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def report():
    """Record one acceptance line; printed again in the terminal summary."""
    def _record(line: str):
        ACCEPTANCE_LINES.append(line)
        print(line)
    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
