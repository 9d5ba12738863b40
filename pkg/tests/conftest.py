import pytest
from hypothesis import settings

from productdecomp import ghz_state, product_state, w_state

from .helpers import SQ2

settings.register_profile("default", max_examples=50, deadline=None)
settings.load_profile("default")


@pytest.fixture
def bell():
    return product_state([[1, 0], [1, 0]]) * SQ2 + product_state([[0, 1], [0, 1]]) * SQ2


@pytest.fixture
def ghz3():
    return ghz_state(3)


@pytest.fixture
def w3():
    return w_state(3)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
