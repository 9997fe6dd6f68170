import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

_CRITERIA: dict[int, str] = {}


@pytest.fixture
def criterion():
    """Record the one-line outcome of an acceptance criterion."""

    def record(number: int, ok: bool, text: str):
        _CRITERIA[number] = f"criterion {number:>2}  {'PASS' if ok else 'FAIL'}  {text}"

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        terminalreporter.write_line(_CRITERIA[n])
