import pytest

from ghostslopes import EpsilonChar


@pytest.fixture
def eps74():
    return EpsilonChar.of(7, 0, 4)


@pytest.fixture
def eps77():
    return EpsilonChar.of(7, 0, 7)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import REPORT
    if REPORT:
        terminalreporter.section("acceptance criteria")
        for line in REPORT:
            terminalreporter.write_line(line)
