import importlib

import pytest

from gradprolong import _pykernels, build_reciprocal
from gradprolong.graph import Digraph

# Aggregates of the three-aggregate worked example (14 fine nodes).
REF_SETS = [{1, 2, 3, 4, 5, 6, 7}, {5, 6, 8, 9, 13, 14}, {7, 8, 10, 11, 12}]

# A connected fine mesh graph on those 14 nodes; every shared node has edges.
REF_FINE_EDGES = (
    (1, 2), (1, 3), (2, 3), (2, 4), (3, 4), (4, 5), (4, 6), (5, 6), (3, 7), (4, 7),
    (6, 8), (7, 8), (5, 9), (6, 9), (9, 13), (13, 14), (9, 14), (8, 10), (10, 11),
    (11, 12), (8, 12), (7, 12), (6, 14),
)


@pytest.fixture
def ref_agg():
    return build_reciprocal(REF_SETS, 14)


@pytest.fixture
def ref_fine():
    return Digraph(14, REF_FINE_EDGES)


@pytest.fixture
def path4():
    """Fine path 1->2->3->4 with aggregates {1,2,3} and {2,3,4}."""
    return Digraph(4, ((1, 2), (2, 3), (3, 4))), build_reciprocal([{1, 2, 3}, {2, 3, 4}], 4)


def _backends():
    out = [pytest.param(_pykernels, id="python")]
    try:
        out.append(pytest.param(importlib.import_module("gradprolong._ckernels"), id="compiled"))
    except ImportError:
        out.append(pytest.param(None, id="compiled", marks=pytest.mark.skip(reason="extension not built")))
    return out


@pytest.fixture(params=_backends())
def backend(request):
    return request.param


# Acceptance criteria summary: one line per test marked ``criterion``.
_CRITERIA = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        _CRITERIA[number] = (title, "PASS" if rep.passed else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, verdict = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number}: {verdict}  {title}")
