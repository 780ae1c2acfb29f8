"""Shared test configuration: prints one PASS/FAIL line per acceptance
criterion in the terminal summary, regardless of capture settings."""

from __future__ import annotations

import re

_CRITERIA: dict = {}
_PATTERN = re.compile(r"test_acceptance\.py::(test_criterion_\d+\w*)")


def pytest_runtest_logreport(report):
    m = _PATTERN.search(report.nodeid)
    if not m:
        return
    name = m.group(1)
    if report.failed:
        _CRITERIA[name] = "FAIL"
    elif report.when == "call" and _CRITERIA.get(name) != "FAIL":
        _CRITERIA[name] = "PASS" if report.passed else report.outcome.upper()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_CRITERIA):
        terminalreporter.write_line(f"{name}: {_CRITERIA[name]}")
