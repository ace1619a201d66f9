import pytest
from hypothesis import settings

from femtosleep import default_layout

ACCEPTANCE_LINES = []


@pytest.fixture
def layout():
    return default_layout()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


settings.register_profile("repro", derandomize=True, deadline=None)
settings.load_profile("repro")
