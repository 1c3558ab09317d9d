import time

_SESSION_T0 = time.perf_counter()


def session_elapsed() -> float:
    return time.perf_counter() - _SESSION_T0


def pytest_sessionfinish(session, exitstatus):
    dur = session_elapsed()
    print(f"\nfull suite wall-clock: {dur:.1f}s (budget 60s)")
