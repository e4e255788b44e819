from __future__ import annotations

import shutil
from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"

_acceptance: dict[str, tuple[int, str, str]] = {}


@pytest.fixture
def workdir(tmp_path: Path) -> Path:
    """A scratch copy of the fixture directory."""
    dest = tmp_path / "work"
    shutil.copytree(FIXTURES, dest)
    return dest


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    number, title = marker.args
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        status = "PASS" if report.passed else "FAIL"
        prev = _acceptance.get(item.nodeid)
        if prev is None or prev[2] == "PASS":
            _acceptance[item.nodeid] = (number, title, status)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    by_criterion: dict[int, tuple[str, str]] = {}
    for number, title, status in _acceptance.values():
        old = by_criterion.get(number)
        if old is None or status == "FAIL":
            by_criterion[number] = (title, status)
    terminalreporter.section("acceptance criteria")
    for number in sorted(by_criterion):
        title, status = by_criterion[number]
        terminalreporter.write_line(f"[{status}] AC{number}: {title}")
