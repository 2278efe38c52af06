import pytest

from hilbeq import gotzmann_decompose


@pytest.fixture(scope="session")
def hilb2():
    """Two points in the projective plane."""
    return gotzmann_decompose([2], 2)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
