import json
from pathlib import Path

import pytest

from fstruct.manifest import builtin_example

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture(scope="session")
def examples():
    """Built-in manifests with their verified structures, keyed 1..4."""
    out = {}
    for k in (1, 2, 3, 4):
        m = builtin_example(k)
        out[k] = (m, m.structure())
    return out


def load_golden(k):
    return json.loads((GOLDEN / f"example{k}.json").read_text())


_CRITERIA = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("::")[-1]
        _CRITERIA[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_CRITERIA, key=lambda s: int(s.split("_")[2])):
        status = "PASS" if _CRITERIA[name] == "passed" else "FAIL"
        terminalreporter.write_line(f"{status}  {name}")
