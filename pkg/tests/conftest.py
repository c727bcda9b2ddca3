import contextlib
import time

ACCEPTANCE_RESULTS = []


@contextlib.contextmanager
def criterion(number, text):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        ACCEPTANCE_RESULTS.append((number, "FAIL", text, time.perf_counter() - start))
        raise
    ACCEPTANCE_RESULTS.append((number, "PASS", text, time.perf_counter() - start))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, status, text, secs in sorted(ACCEPTANCE_RESULTS, key=lambda r: str(r[0])):
        terminalreporter.write_line(f"[{status}] criterion {number}: {text} ({secs:.2f}s)")
