import json
import sys
from itertools import combinations

import pytest

from qplab import kernels
from qplab.drawing import Drawing
from qplab.errors import GeometryError
from qplab.geometry import PolylineCurve, curve_crossings, intersection_points
from qplab.lab import convex_points, figure_fixture
from qplab.pipeline import arcs_from_curves


def straight(points, edges):
    """Drawing with vertex ids 1..n at ``points`` and straight ``edges`` (1-based pairs)."""
    return Drawing.from_data({i + 1: p for i, p in enumerate(points)}, edges)


def convex_complete(n):
    pts = [(p.x, p.y) for p in convex_points(n)]
    return straight(pts, list(combinations(range(1, n + 1), 2)))


def path_drawing(n):
    return straight([(i, 0) for i in range(n)], [(i, i + 1) for i in range(1, n)])


def write_doc(tmp_path, doc, name="d.json"):
    p = tmp_path / name
    p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return str(p)


@pytest.fixture
def figure1():
    return figure_fixture("figure1")


@pytest.fixture
def figure2():
    return figure_fixture("figure2")


@pytest.fixture(params=[m.BACKEND for m in kernels.backends()])
def backend(request):
    return next(m for m in kernels.backends() if m.BACKEND == request.param)


def random_arcs(rng, size, line_x=1000):
    """``size`` x-monotone arcs ending on the vertical line x = line_x.

    Starts have distinct x, ends distinct y; each arc has one random bend.
    Families with touching or overlapping arcs are redrawn.
    """
    while True:
        xs = rng.sample(range(0, line_x // 2), size)
        ends = rng.sample(range(-line_x, line_x), size)
        curves = []
        for x, e in zip(xs, ends):
            bx = rng.randint(x + 1, line_x - 1)
            curves.append(PolylineCurve.of((x, rng.randint(-line_x, line_x)),
                                           (bx, rng.randint(-line_x, line_x)), (line_x, e)))
        try:
            for p, q in combinations(curves, 2):
                intersection_points(p, q)
                curve_crossings(p, q)
        except GeometryError:
            continue
        return arcs_from_curves(curves)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n][1])
