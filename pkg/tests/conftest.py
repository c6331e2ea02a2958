import pytest

from approxksub.objectives import random_coverage


@pytest.fixture
def coverage1():
    """Coverage fixture #1: n=6, k=2, seed 42."""
    return random_coverage(6, 2, seed=42)


@pytest.fixture
def coverage2():
    """Coverage fixture #2: n=6, k=3, seed 7."""
    return random_coverage(6, 3, seed=7)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
