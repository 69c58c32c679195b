import pytest

_RESULTS: dict = {}


@pytest.fixture
def criterion():
    """Record the verdict of one acceptance criterion for the summary."""
    def record(number: int, ok: bool, detail: str):
        _RESULTS[number] = (ok, detail)
    return record


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        ok, detail = _RESULTS[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
