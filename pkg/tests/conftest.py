import pytest

from unfolding import build_matching_pennies, build_modified_mp

# (criterion label, outcome) pairs appended by the acceptance tests
ACCEPTANCE_RESULTS = []


@pytest.fixture
def mp():
    return build_matching_pennies()


@pytest.fixture
def g14():
    return build_modified_mp("1/4")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}")
