import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import pytest

import framelets

DATA = Path(framelets.__file__).parent / "data"


@pytest.fixture
def data_dir() -> Path:
    return DATA


# -- per-criterion acceptance summary -----------------------------------------

import re

_CRITERION = re.compile(r"test_criterion_(\d+)")
_outcomes: dict[int, bool] = {}


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if not m:
        return
    n = int(m.group(1))
    if report.when == "call" or report.failed:
        _outcomes[n] = _outcomes.get(n, True) and not report.failed


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_outcomes):
        terminalreporter.write_line(f"ACCEPTANCE {n} {'PASS' if _outcomes[n] else 'FAIL'}")
