import pytest

from magnonbls.brillouin import YIG
from magnonbls.wgm import SphereGeometry, WgmIndex, solve_mode

DEFAULT_GEOMETRY = SphereGeometry(0.5e-3, 2.19)


@pytest.fixture(scope="session")
def geometry():
    return DEFAULT_GEOMETRY


@pytest.fixture(scope="session")
def material():
    return YIG


@pytest.fixture(scope="session")
def modes():
    """Memoized mode solver keyed by (orbit, polarization, m)."""
    cache = {}

    def get(orbit, pol, m, q=1):
        key = (orbit, pol, m, q)
        if key not in cache:
            cache[key] = solve_mode(DEFAULT_GEOMETRY, WgmIndex(orbit, pol, m, q))
        return cache[key]

    return get


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
