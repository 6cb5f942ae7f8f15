import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from bmfinsler import kinematics as kin

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def log_component(lo=-1.0, hi=1.0):
    return st.floats(lo, hi, allow_nan=False).map(lambda e: 10.0 ** e)


def up_points(lo=-1.0, hi=1.0):
    """Up-sector points with components log-uniform in [10^lo, 10^hi]."""
    return st.lists(log_component(lo, hi), min_size=4, max_size=4).map(np.array)


def velocities(margin=1e-3):
    """Admissible velocities with every bracket factor above ``margin``."""
    cube = st.lists(st.floats(-1.0, 1.0, allow_nan=False), min_size=3, max_size=3).map(np.array)
    return cube.filter(lambda s: np.all(kin.bracket_factors(s) > margin))


def future_vectors():
    combos = st.lists(st.floats(0.05, 3.0, allow_nan=False), min_size=4, max_size=4)
    return combos.map(lambda c: kin.HADAMARD.C @ np.array(c) / 4.0)


@pytest.fixture
def rng():
    return np.random.default_rng(7)


@pytest.fixture(params=["hadamard", "orthonormal"])
def constants(request):
    from bmfinsler.frames import constants_matrix
    return constants_matrix(request.param)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import SUMMARY
    if SUMMARY:
        terminalreporter.section("acceptance criteria")
        for line in sorted(SUMMARY, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
