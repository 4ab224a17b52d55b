import pytest

from rayleigh_mi.quadrature import half_range_hermite_rule

_acceptance_lines = []


@pytest.fixture(scope="session")
def rule15():
    return half_range_hermite_rule(15)


@pytest.fixture
def record_criterion():
    """Collects one pass/fail line per acceptance criterion for the summary."""

    def record(number, description, passed, detail=""):
        line = f"[criterion {number:>2}] {'PASS' if passed else 'FAIL'}  {description}  {detail}".rstrip()
        print(line)
        _acceptance_lines.append(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_acceptance_lines):
            terminalreporter.write_line(line)
