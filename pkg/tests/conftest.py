import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from markgame import Forest  # noqa: E402


@pytest.fixture
def spec_tree():
    # 0-1-2-3-4 spine with leaves 5 (on 1), 7 (on 2), 6 and 8 (on 3)
    return Forest(9, [(0, 1), (1, 2), (2, 3), (3, 4), (3, 6), (3, 8), (2, 7), (1, 5)])



ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance():
    """Record one pass/fail line per acceptance criterion."""

    def record(name, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] {name}" + (f" -- {detail}" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
