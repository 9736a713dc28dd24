import pytest

from xtalk.device import default_mesh_device

# lines printed by the acceptance suite, echoed in the terminal summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def mesh16():
    return default_mesh_device(16)


@pytest.fixture(scope="session")
def mesh9():
    return default_mesh_device(9)
