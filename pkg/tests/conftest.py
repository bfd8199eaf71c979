import pytest

CRITERIA: dict = {}


@pytest.fixture
def criterion():
    """Record and print a one-line verdict, then return it for asserting."""

    def record(k: int, passed: bool, detail: str) -> bool:
        line = f"{'PASS' if passed else 'FAIL'} criterion {k}: {detail}"
        CRITERIA[k] = line
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(CRITERIA):
        terminalreporter.write_line(CRITERIA[k])
