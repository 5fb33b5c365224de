import pytest

_CRITERIA = {}


@pytest.fixture
def criterion():
    """Record a numbered acceptance criterion; returns ``ok`` for use in an assert."""
    def record(number, ok, detail):
        status = "PASS" if ok else "FAIL"
        _CRITERIA[number] = f"criterion {number:2d}: {status}  {detail}"
        print(_CRITERIA[number])
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for number in sorted(_CRITERIA):
            terminalreporter.write_line(_CRITERIA[number])
