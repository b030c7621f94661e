import pytest

ACCEPTANCE: dict[int, str] = {}


@pytest.fixture
def record():
    def _record(number: int, ok: bool, text: str) -> None:
        ACCEPTANCE[number] = f"{'PASS' if ok else 'FAIL'} criterion {number}: {text}"
    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
