import pytest

_CRITERIA: list[tuple[int, str, bool, str]] = []


@pytest.fixture
def criterion():
    """Record one acceptance line; returns the verdict for asserting."""

    def record(number: int, title: str, passed: bool, detail: str = "") -> bool:
        _CRITERIA.append((number, title, bool(passed), detail))
        return bool(passed)

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, detail in sorted(_CRITERIA):
        verdict = "PASS" if passed else "FAIL"
        suffix = f" ({detail})" if detail else ""
        terminalreporter.write_line(f"[{verdict}] {number}. {title}{suffix}")
