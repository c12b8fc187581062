"""Fixture generators and exact extremal search on small point sets."""
from __future__ import annotations

import random
from dataclasses import dataclass
from importlib import resources
from itertools import combinations

import numpy as np

from . import kernels
from .docio import parse_document
from .drawing import Drawing, Edge, Vertex, crossing_graph
from .errors import InvalidK, RetryBudget, SizeLimit
from .geometry import Point, PolylineCurve, format_rational, orient, segment_intersection, to_rational

KINDS = ("random-geometric", "random-x-monotone", "convex-complete", "figure-fixture")
FIGURES = ("figure1", "figure2")
DEFAULT_EXTREMAL_LIMIT = 9


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    n: int = 6
    seed: int = 0
    coord_range: int = 100
    edge_prob: float = 0.5
    name: str = "figure1"
    max_retries: int = 200


def _general_position_points(rng: random.Random, n: int, r: int, distinct_x: bool) -> list[Point]:
    pts: list[Point] = []
    tries = 0
    while len(pts) < n:
        tries += 1
        if tries > 10000 * max(1, n):
            raise RetryBudget("could not place points in general position")
        p = Point(rng.randint(0, r), rng.randint(0, r))
        if p in pts or (distinct_x and any(q.x == p.x for q in pts)):
            continue
        if any(orient(a, b, p) == 0 for a, b in combinations(pts, 2)):
            continue
        pts.append(p)
    return pts


def _pick_edges(rng: random.Random, n: int, prob: float) -> list[tuple[int, int]]:
    return [(i, j) for i, j in combinations(range(n), 2) if rng.random() < prob]


def _random_geometric(spec: GeneratorSpec, rng: random.Random) -> Drawing:
    pts = _general_position_points(rng, spec.n, spec.coord_range, distinct_x=False)
    verts = tuple(Vertex(i + 1, p) for i, p in enumerate(pts))
    edges = tuple(Edge(i + 1, j + 1, PolylineCurve((pts[i], pts[j])))
                  for i, j in _pick_edges(rng, spec.n, spec.edge_prob))
    return Drawing(verts, edges)


def _random_x_monotone(spec: GeneratorSpec, rng: random.Random) -> Drawing:
    # vertex x spaced by 16 so every edge has room for interior waypoints
    pts = _general_position_points(rng, spec.n, spec.coord_range, distinct_x=True)
    pts = [Point(p.x * 16, p.y * 16) for p in pts]
    verts = tuple(Vertex(i + 1, p) for i, p in enumerate(pts))
    ylo, yhi = -8 * spec.coord_range, 24 * spec.coord_range
    edges = []
    for i, j in _pick_edges(rng, spec.n, spec.edge_prob):
        a, b = sorted((pts[i], pts[j]), key=lambda p: p.x)
        segs = rng.randint(2, 4)
        xs = sorted(rng.sample(range(int(a.x) + 1, int(b.x)), min(segs - 1, int(b.x - a.x) - 1)))
        way = [a] + [Point(x, rng.randint(ylo, yhi)) for x in xs] + [b]
        edges.append(Edge(i + 1, j + 1, PolylineCurve(tuple(way)), True))
    return Drawing(verts, tuple(edges))


def convex_points(n: int) -> list[Point]:
    """n points in convex position on y = x^2 with no three chords concurrent.

    x-values are chosen greedily (smallest next integer that keeps every
    crossing point distinct), so smaller n gives a prefix of larger n.
    """
    xs: list[int] = []
    crossings: set = set()
    x = 0
    while len(xs) < n:
        pts = [Point(v, v * v) for v in xs] + [Point(x, x * x)]
        new = set()
        ok = True
        j = len(pts) - 1
        for i in range(j):
            for p, q in combinations(range(j), 2):
                if i in (p, q) or not _segments_cross(pts[i], pts[j], pts[p], pts[q]):
                    continue
                hit = segment_intersection(pts[i], pts[j], pts[p], pts[q])[0][0]
                if hit in crossings or hit in new:
                    ok = False
                    break
                new.add(hit)
            if not ok:
                break
        if ok:
            xs.append(x)
            crossings |= new
        x += 1
    return [Point(v, v * v) for v in xs]


def _convex_complete(spec: GeneratorSpec, rng: random.Random) -> Drawing:
    pts = convex_points(spec.n)
    verts = tuple(Vertex(i + 1, p) for i, p in enumerate(pts))
    edges = tuple(Edge(i + 1, j + 1, PolylineCurve((pts[i], pts[j])))
                  for i, j in combinations(range(spec.n), 2))
    return Drawing(verts, edges)


def figure_fixture(name: str) -> Drawing:
    if name not in FIGURES:
        raise ValueError(f"unknown figure fixture {name!r}; known: {FIGURES}")
    text = resources.files("qplab").joinpath("data", f"{name}.json").read_text()
    return parse_document(text)


def generate(spec: GeneratorSpec) -> Drawing:
    """Deterministic drawing for ``spec``; degenerate draws are regenerated."""
    if spec.kind == "figure-fixture":
        return figure_fixture(spec.name)
    makers = {"random-geometric": _random_geometric, "random-x-monotone": _random_x_monotone,
              "convex-complete": _convex_complete}
    if spec.kind not in makers:
        raise ValueError(f"unknown generator kind {spec.kind!r}; known: {KINDS}")
    rng = random.Random(spec.seed)
    for _ in range(spec.max_retries):
        d = makers[spec.kind](spec, rng)
        if d.report.valid:
            return d
    raise RetryBudget(f"{spec.kind} n={spec.n} seed={spec.seed}: no valid drawing after {spec.max_retries} tries")


def make_k_quasiplanar(d: Drawing, k: int) -> Drawing:
    """Drop edges (highest index of each witness first) until no k edges pairwise cross.

    The crossing matrix is computed once; kept edges stay in their original
    order, so each round sees the same witness as a fresh check would.
    """
    if k < 2:
        raise InvalidK(f"k must be at least 2, got {k}")
    full = crossing_graph(d).matrix()
    keep = list(range(d.m))
    while keep:
        w = kernels.max_clique(full[np.ix_(keep, keep)])
        if len(w) < k:
            break
        del keep[max(w[:k])]
    return d.without_edges(set(range(d.m)) - set(keep))


# -- extremal search ----------------------------------------------------------

def _segments_cross(a: Point, b: Point, c: Point, e: Point) -> bool:
    return (orient(a, b, c) * orient(a, b, e) < 0) and (orient(c, e, a) * orient(c, e, b) < 0)


def complete_crossing_matrix(points) -> tuple[list[tuple[int, int]], np.ndarray]:
    """Segments of the complete geometric graph (lex order) and their crossing matrix."""
    segs = list(combinations(range(len(points)), 2))
    m = len(segs)
    adj = np.zeros((m, m), dtype=np.uint8)
    for x, y in combinations(range(m), 2):
        (i, j), (p, q) = segs[x], segs[y]
        if len({i, j, p, q}) == 4 and _segments_cross(points[i], points[j], points[p], points[q]):
            adj[x, y] = adj[y, x] = 1
    return segs, adj


@dataclass(frozen=True)
class ExtremalResult:
    points: tuple[Point, ...]
    k: int
    max_edges: int
    witness: tuple[tuple[int, int], ...]

    def to_json(self) -> dict:
        return {"points": [[format_rational(p.x), format_rational(p.y)] for p in self.points],
                "k": self.k, "max_edges": self.max_edges,
                "witness": [list(e) for e in self.witness]}

    def drawing(self) -> Drawing:
        verts = tuple(Vertex(i, p) for i, p in enumerate(self.points))
        return Drawing(verts, tuple(Edge(i, j, PolylineCurve((self.points[i], self.points[j])))
                                    for i, j in self.witness))


def extremal_max_edges(points, k: int, limit: int = DEFAULT_EXTREMAL_LIMIT) -> ExtremalResult:
    """Most straight-line edges on ``points`` with no k pairwise crossing.

    Witness edges are point-index pairs; among optimal edge sets the one
    whose sorted segment indices are lexicographically smallest is returned.
    """
    pts = tuple(p if isinstance(p, Point) else Point(*p) for p in points)
    if len(pts) > limit:
        raise SizeLimit(f"extremal search limited to {limit} points, got {len(pts)}")
    if k < 2:
        raise ValueError("k must be at least 2")
    if len(set(pts)) != len(pts) or any(orient(a, b, c) == 0 for a, b, c in combinations(pts, 3)):
        raise ValueError("points must be distinct with no three collinear")
    segs, adj = complete_crossing_matrix(pts)
    chosen = kernels.max_k_free_subset(adj, k)
    return ExtremalResult(pts, k, len(chosen), tuple(segs[i] for i in chosen))


def parse_points(raw) -> list[Point]:
    return [Point(to_rational(x), to_rational(y)) for x, y in raw]


def random_points(n: int, seed: int, coord_range: int = 50) -> list[Point]:
    return _general_position_points(random.Random(seed), n, coord_range, distinct_x=False)
