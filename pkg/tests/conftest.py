from pathlib import Path

import pytest
from hypothesis import settings

from commonperm.core import CnfFormula, CpInstance

GOLDEN = Path(__file__).parent / "golden"

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")

_criteria: dict[int, tuple[str, list[str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marker = getattr(report, "_criterion", None)
    if marker is None:
        return
    number, title = marker
    _criteria.setdefault(number, (title, []))[1].append(report.outcome)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        report._criterion = tuple(marker.args)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, outcomes = _criteria[number]
        verdict = "PASS" if outcomes and all(o == "passed" for o in outcomes) else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {verdict}  {title}")


@pytest.fixture
def example1() -> CpInstance:
    return CpInstance.from_names("abc", "bcaba", "babcca")


@pytest.fixture
def worked_formula() -> CnfFormula:
    # (w or not x or y) and (not z or x or not y) with w, x, y, z = 1..4
    return CnfFormula(4, ((1, -2, 3), (-4, 2, -3)))
