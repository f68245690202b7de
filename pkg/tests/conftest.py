import pytest

ACCEPTANCE: list[str] = []


@pytest.fixture
def record():
    return ACCEPTANCE.append


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE):
            terminalreporter.write_line(line)
