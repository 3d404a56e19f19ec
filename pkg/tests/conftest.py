import numpy as np
import pytest

from pricevar import PriceSeries


def staircase_prices():
    """Three boxes (10, 8), (13, 11), (16, 14) over ticks t = 0..29."""
    prices = []
    for base in (8.0, 11.0, 14.0):
        prices += [base, base + 2.0] * 5
    return prices


@pytest.fixture
def staircase():
    return PriceSeries(np.arange(30), np.array(staircase_prices()))


@pytest.fixture
def rng():
    return np.random.default_rng(20261019)


ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(cid, title): exit criterion of the build")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or report.when not in ("setup", "call"):
        return
    cid, title = marker.args
    if report.when == "call" or report.failed:
        ACCEPTANCE[cid] = (title, report.passed, getattr(report, "duration", 0.0))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(ACCEPTANCE, key=lambda c: int(c[2:])):
        title, passed, duration = ACCEPTANCE[cid]
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"{status}  {cid:<5} {title} ({duration:.2f}s)")
