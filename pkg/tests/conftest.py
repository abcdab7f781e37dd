import pytest

_LINES: list[str] = []


@pytest.fixture
def acceptance_line():
    """Collects one PASS/FAIL line per acceptance criterion for the summary."""
    def record(line: str) -> None:
        print(line)
        _LINES.append(line)
    return record


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_LINES, key=lambda s: int(s.split()[1][1:])):
            terminalreporter.write_line(line)
