import pytest

from najc import model
from najc.report import analyze

from .oracles import GOLDEN


@pytest.fixture(scope="session")
def golden_input():
    return model.load_input(GOLDEN)


@pytest.fixture(scope="session")
def golden(golden_input):
    return analyze(golden_input)


@pytest.fixture(scope="session")
def golden_dec(golden):
    return golden.decomposition


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    lines = test_acceptance.summary_lines()
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
