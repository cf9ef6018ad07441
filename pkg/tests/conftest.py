import pytest

from canonlift.models import height1_model, height2_model


@pytest.fixture(scope="session")
def h2():
    return height2_model()


@pytest.fixture(scope="session")
def h1():
    return {p: height1_model(p) for p in (2, 3, 5)}


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
