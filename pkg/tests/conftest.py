import time

import pytest

from codewheels.pipeline import run_table1, run_table2

ACCEPTANCE_LINES: list[str] = []
RUN_SECONDS: dict[str, float] = {}


def _timed(name: str, run):
    t0 = time.perf_counter()
    out = run()
    RUN_SECONDS[name] = time.perf_counter() - t0
    return out


@pytest.fixture(scope="session")
def table1_records():
    return _timed("table1", run_table1)


@pytest.fixture(scope="session")
def table2_records():
    return _timed("table2", run_table2)


@pytest.fixture(scope="session")
def run_seconds():
    """Wall time of each full run, filled in when its records fixture is built."""
    return RUN_SECONDS


@pytest.fixture
def acceptance_line():
    def emit(criterion: int, ok: bool, detail: str = "") -> None:
        line = f"criterion {criterion:>2}: {'PASS' if ok else 'FAIL'}" + (f"  {detail}" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)

    return emit


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
