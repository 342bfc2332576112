import sys
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from crosscap.fixtures import load_fixture  # noqa: E402
from crosscap.triangulation import GluingTable, build  # noqa: E402

DATA = Path(__file__).parent / "data"

# Single tetrahedron with faces 2 and 3 glued so that two of its vertices
# stay apart.
TWO_VERTEX_ROWS = [[None, None, (0, 3, (0, 2, 3, 1)), (0, 2, (0, 3, 1, 2))]]


def two_vertex():
    return build(GluingTable.from_lists(TWO_VERTEX_ROWS))


@lru_cache(maxsize=None)
def fixture(name):
    return load_fixture(name)


def tri_of(obj):
    return getattr(obj, "tri", obj)


@pytest.fixture
def unknot():
    return fixture("unknot")


@pytest.fixture
def trefoil():
    return fixture("trefoil")


@lru_cache(maxsize=None)
def crosscap(name, method, mode="strict"):
    """Cached pipeline result for a fixture (a few runs take seconds)."""
    from crosscap.pipeline import run
    return run(fixture(name), method, mode)[0]


# One summary line per acceptance criterion: tests named
# ``test_criterion_<k>_...`` in test_acceptance.py report there.
_CRITERIA = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.split("::")[-1]
    if "test_acceptance" not in report.nodeid or not name.startswith("test_criterion_"):
        return
    key = int(name.split("_")[2])
    failed = report.failed or (report.when == "call" and report.skipped)
    prev = _CRITERIA.get(key, (name, True))
    _CRITERIA[key] = (name, prev[1] and not failed)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_CRITERIA):
        name, ok = _CRITERIA[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'}  ({name})")
