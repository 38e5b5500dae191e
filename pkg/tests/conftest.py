import time

import numpy as np
import pytest
from hypothesis import strategies as st

from swapmeter import states

_criteria: dict[int, dict] = {}
_session = {}
SUITE_BUDGET_S = 60.0


def bloch_vectors(max_length: float = 1.0):
    """Hypothesis strategy for physical Bloch vectors (as numpy arrays)."""
    direction = st.tuples(*[st.floats(-1, 1) for _ in range(3)]).filter(
        lambda v: np.linalg.norm(v) > 1e-3)
    length = st.floats(0.0, max_length)
    return st.builds(lambda d, r: r * np.asarray(d) / np.linalg.norm(d), direction, length)


def qubit_states(max_length: float = 1.0):
    return bloch_vectors(max_length).map(states.from_vector)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_sessionstart(session):
    _session["start"] = time.perf_counter()


def pytest_sessionfinish(session, exitstatus):
    _session["elapsed"] = time.perf_counter() - _session["start"]
    if _session["elapsed"] > SUITE_BUDGET_S and exitstatus == 0:
        session.exitstatus = 1


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    for key, value in report.user_properties:
        if key == "criterion":
            number, title = value
            entry = _criteria.setdefault(number, {"title": title, "ok": True})
            entry["ok"] = entry["ok"] and report.passed


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        entry = _criteria[number]
        status = "PASS" if entry["ok"] else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {status}  {entry['title']}")
    elapsed = _session.get("elapsed", time.perf_counter() - _session["start"])
    status = "PASS" if elapsed <= SUITE_BUDGET_S else "FAIL"
    terminalreporter.write_line(
        f"criterion 8: {status}  suite runtime {elapsed:.1f} s (budget {SUITE_BUDGET_S:.0f} s)")
