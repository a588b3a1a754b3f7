import pytest

from cylforge.graded import GradedDomain
from cylforge.lnd import check_derivation


@pytest.fixture
def cusp():
    """k[x,y,z]/(x^2 - y^3) with weights (3,2,1)."""
    return GradedDomain(["x", "y", "z"], [3, 2, 1], ["x^2 - y^3"])


@pytest.fixture
def plane21():
    return GradedDomain(["x", "y"], [2, 1])


@pytest.fixture
def plane11():
    return GradedDomain(["x", "y"], [1, 1])


@pytest.fixture
def pb237():
    return GradedDomain(["x", "y", "z"], [21, 14, 6], ["x^2 + y^3 + z^7"])


def der(A, *images):
    return check_derivation(A, list(images))


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(n): numbered acceptance criterion")


_VERDICTS = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    info = getattr(getattr(item, "function", None), "criterion", None)
    if info is None:
        return
    failed = report.failed
    if report.when == "call" or failed:
        previous = _VERDICTS.get(info[0], (True, info[1]))[0]
        _VERDICTS[info[0]] = (previous and not failed, info[1])


def pytest_terminal_summary(terminalreporter):
    if not _VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_VERDICTS):
        ok, summary = _VERDICTS[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {summary}")
