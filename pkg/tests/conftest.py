import pytest

from lucasconv.sequences import LucasParams

PARAM_MATRIX = [
    LucasParams(1, -1, 1),
    LucasParams(2, -1, 1),
    LucasParams(1, -1, 2),
    LucasParams(3, 2, 1),
    LucasParams(3, 2, 2),
]

_ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_log():
    """Collects one status line per acceptance check; printed in the terminal summary."""
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
