from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

GOLDEN = Path(__file__).parent / "golden"

# criterion number -> (title, [outcomes])
_criteria: dict[int, tuple[str, list[str]]] = {}


@pytest.fixture
def golden():
    return GOLDEN


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("acceptance")
        if mark is not None:
            n = mark.kwargs["criterion"]
            _criteria.setdefault(n, (mark.kwargs.get("title", ""), []))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        n = mark.kwargs["criterion"]
        # an expected failure is still a failed criterion
        ok = rep.passed and not hasattr(rep, "wasxfail")
        _criteria[n][1].append("pass" if ok else "fail")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_criteria):
        title, outcomes = _criteria[n]
        if not outcomes:
            status = "NOT RUN"
        elif all(o == "pass" for o in outcomes):
            status = "PASS"
        else:
            status = "FAIL"
        tr.write_line(f"criterion {n:2d}: {status:7s} {title} ({outcomes.count('pass')}/{len(outcomes)} tests)")
