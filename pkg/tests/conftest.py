import pytest

_ACCEPTANCE_LINES = []


@pytest.fixture
def report():
    """Record one PASS/FAIL line per acceptance criterion and assert it."""

    def _report(number, title, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title}"
        if detail:
            line += f" ({detail})"
        _ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line

    return _report


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def bisect(f, lo, hi, tol=1e-13):
    """Plain bisection, used as an oracle independent of the library solvers."""
    flo = f(lo)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)
