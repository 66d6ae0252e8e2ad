import pytest
from hypothesis import strategies as st

from permsim.perm_core import Permutation, cycle_type

ACCEPTANCE_FILE = "test_acceptance.py"
_acceptance_outcomes: dict[str, str] = {}


@st.composite
def permutations_of(draw, min_n=1, max_n=8):
    n = draw(st.integers(min_n, max_n))
    images = draw(st.permutations(list(range(1, n + 1))))
    return Permutation(tuple(images))


@st.composite
def cycle_types(draw, min_n=1, max_n=20):
    return cycle_type(draw(permutations_of(min_n, max_n)))


def pytest_runtest_logreport(report):
    if ACCEPTANCE_FILE in report.nodeid and (report.when == "call" or report.outcome != "passed"):
        name = report.nodeid.split("::")[-1]
        if report.when == "call" or name not in _acceptance_outcomes:
            _acceptance_outcomes[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance_outcomes.items():
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")


@pytest.fixture
def rng():
    import random
    return random.Random(12345)
