import pytest

_KEY = pytest.StashKey[list]()


@pytest.fixture
def record(request):
    """Log one acceptance line: record(number, title, passed, detail)."""
    lines = request.config.stash.setdefault(_KEY, [])

    def _record(number, title, passed, detail):
        lines.append((number, title, bool(passed), detail))
        return passed

    return _record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_KEY, [])
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, detail in sorted(lines):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{status}] {number:2d}. {title}: {detail}")
