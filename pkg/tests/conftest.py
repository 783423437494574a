import pytest

from pdakit.pda import Pda

# the Ali-Niesen PDA for K=4, t=2, rows are the 2-subsets of {1..4} in lex order
A42_ROWS = [
    ["*", "*", 1, 2],
    ["*", 1, "*", 3],
    ["*", 2, 3, "*"],
    [1, "*", "*", 4],
    [2, "*", 4, "*"],
    [3, 4, "*", "*"],
]


@pytest.fixture
def a42():
    return Pda.from_rows(A42_ROWS)


ACCEPTANCE_RESULTS = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        ACCEPTANCE_RESULTS.append((name, report.outcome, report.duration))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome, duration in ACCEPTANCE_RESULTS:
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict}  {name}  ({duration:.2f}s)")
