import json
from pathlib import Path

import pytest

from cgrefine.diagram import diagram_for_cycle, diagram_for_pair
from cgrefine.geometry import generic_projection, random_polyline
from cgrefine.graphs import Cycle, CyclePair, SimpleGraph

FIXTURES = Path(__file__).parent / "fixtures"

TRIANGLE = SimpleGraph((1, 2, 3), frozenset({(1, 2), (2, 3), (1, 3)}))
TWO_TRIANGLES = SimpleGraph((1, 2, 3, 4, 5, 6), frozenset({(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)}))


def random_knot_diagram(seed: int, bends: int = 3, span: int = 12):
    """Diagram of a random closed polygon with 3 * (bends + 1) sticks."""
    e = random_polyline(TRIANGLE, seed, span=span, bends=bends)
    return diagram_for_cycle(generic_projection(e, seed), Cycle((1, 2, 3)))


def random_link_diagram(seed: int, bends: int = 2, span: int = 12):
    e = random_polyline(TWO_TRIANGLES, seed, span=span, bends=bends)
    pair = CyclePair(Cycle((1, 2, 3)), Cycle((4, 5, 6)))
    return diagram_for_pair(generic_projection(e, seed), pair)


@pytest.fixture(scope="session")
def manifest():
    return json.loads((FIXTURES / "manifest.json").read_text())


# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
