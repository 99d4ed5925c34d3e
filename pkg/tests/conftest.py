import mpmath
import pytest
from hypothesis import HealthCheck, settings

from lgcy.geometry import catalog

settings.register_profile("lgcy", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("lgcy")

CATALOG = catalog()
CATALOG_IDS = [ws.label() for ws in CATALOG]


@pytest.fixture(autouse=True)
def _mp_precision():
    # numeric routines lean on the ambient precision for intermediate steps
    old = mpmath.mp.prec
    mpmath.mp.prec = 256
    yield
    mpmath.mp.prec = old


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: runs for more than a few seconds")


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
