import re

import pytest

_CRITERION = re.compile(r"test_criterion_(\d+)_")
_results: dict[int, list[str]] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    m = _CRITERION.search(report.nodeid)
    if m and "test_acceptance.py" in report.nodeid:
        _results.setdefault(int(m.group(1)), []).append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_results):
        outcomes = _results[n]
        verdict = "PASS" if all(o == "passed" for o in outcomes) else "FAIL"
        terminalreporter.write_line(f"criterion {n}: {verdict} ({len(outcomes)} test(s))")


@pytest.fixture
def rng():
    import numpy as np

    return np.random.default_rng(20240607)
