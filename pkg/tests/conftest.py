import sys
from collections import OrderedDict
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

from vertexrb import io  # noqa: E402

settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")

_CRITERIA = OrderedDict()


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marks = getattr(report, "criterion", None)
    if marks is None:
        return
    number, title = marks
    entry = _CRITERIA.setdefault(number, {"title": title, "parts": []})
    entry["parts"].append((report.nodeid.split("::")[-1], report.outcome))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        report.criterion = mark.args


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number, entry in sorted(_CRITERIA.items(), key=lambda kv: kv[0]):
        ok = all(outcome == "passed" for _, outcome in entry["parts"])
        failing = [name for name, outcome in entry["parts"] if outcome != "passed"]
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {entry['title']}"
        if failing:
            line += f"  (failing: {', '.join(failing)})"
        tr.write_line(line)


@pytest.fixture(scope="session")
def heis1():
    return io.load_algebra("heis1")


@pytest.fixture(scope="session")
def heis2():
    return io.load_algebra("heis2")


@pytest.fixture(scope="session")
def odd1():
    return io.load_algebra("odd1")


@pytest.fixture(scope="session")
def even1():
    return io.load_algebra("even1")


@pytest.fixture(scope="session")
def proj1(heis2):
    return io.load_operator("proj1", heis2)


@pytest.fixture(scope="session")
def proj2(heis2):
    return io.load_operator("proj2", heis2)
