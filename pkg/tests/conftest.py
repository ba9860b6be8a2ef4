"""Shared reporting for the acceptance suite.

Each acceptance test registers its criterion through the `acceptance`
fixture; the terminal summary then shows one PASS/FAIL line per
criterion that ran, whatever the capture settings.
"""

import re

import pytest

_RESULTS = {}


@pytest.fixture
def acceptance():
    def record(num, note, elapsed):
        _RESULTS[num] = ("PASS", f"{note} [{elapsed:.1f}s]")

    return record


def pytest_runtest_logreport(report):
    if report.when != "call" or not report.failed:
        return
    m = re.search(r"test_criterion_(\d+)", report.nodeid)
    if m:
        _RESULTS[int(m.group(1))] = ("FAIL", report.nodeid.split("::")[-1])


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_RESULTS):
        status, note = _RESULTS[num]
        terminalreporter.write_line(f"criterion {num:2d} {status}: {note}")
