import time
from contextlib import contextmanager

ACCEPTANCE_LINES: list[str] = []


@contextmanager
def criterion(number: int, title: str, limit: float):
    """Time a criterion, enforce its runtime limit and record one pass/fail line."""
    start = time.perf_counter()
    status, note = "FAIL", ""
    try:
        yield
        elapsed = time.perf_counter() - start
        if elapsed >= limit:
            note = f" (over the {limit:g} s limit)"
            raise AssertionError(f"criterion {number} took {elapsed:.2f} s, limit {limit:g} s")
        status = "PASS"
    except BaseException as exc:
        note = note or f" ({type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''})"
        raise
    finally:
        elapsed = time.perf_counter() - start
        line = f"[{status}] criterion {number}: {title} [{elapsed:.2f} s / {limit:g} s]{note}"
        ACCEPTANCE_LINES.append(line)
        print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
