"""Topological graph drawings and the queries the proofs rely on."""
from __future__ import annotations

import math
import random
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

import numpy as np

from . import kernels
from .errors import (DegenerateError, InvalidDrawing, InvalidK, OverlapError, SizeLimit,
                     TangencyError)
from .geometry import CrossingPoint, Point, PolylineCurve, curve_crossings, shared_endpoints

DEFAULT_BISECTION_LIMIT = 20


@dataclass(frozen=True)
class Vertex:
    id: int
    point: Point


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    curve: PolylineCurve | None
    explicit: bool = False  # curve came from an explicit polyline

    @property
    def key(self) -> frozenset:
        return frozenset((self.u, self.v))


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str
    edges: tuple[int, ...] = ()
    vertices: tuple[int, ...] = ()

    def to_json(self) -> dict:
        return {"kind": self.kind, "detail": self.detail,
                "edges": list(self.edges), "vertices": list(self.vertices)}


@dataclass
class ValidationReport:
    simple: bool
    x_monotone: bool
    violations: list[Violation] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"valid": self.valid, "simple": self.simple, "x_monotone": self.x_monotone,
                "violations": [v.to_json() for v in self.violations]}


@dataclass(frozen=True)
class SimpleGraph:
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]


@dataclass(frozen=True, eq=False)
class Drawing:
    """Vertices at exact points and edges drawn as polylines.

    Construction never validates; call :func:`validate_drawing` (or rely on
    the queries below, which refuse invalid drawings).
    """

    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]

    @classmethod
    def from_data(cls, points, edges) -> "Drawing":
        """Build from ``{id: (x, y)}`` and ``[(u, v)]`` or ``[(u, v, waypoints)]``."""
        items = points.items() if isinstance(points, dict) else points
        verts = tuple(Vertex(int(i), p if isinstance(p, Point) else Point(*p)) for i, p in items)
        pos = {v.id: v.point for v in verts}
        out = []
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if len(e) > 2 and e[2] is not None:
                out.append(Edge(u, v, PolylineCurve(tuple(e[2])), True))
            else:
                out.append(Edge(u, v, PolylineCurve((pos[u], pos[v]))))
        return cls(verts, tuple(out))

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def positions(self) -> dict[int, Point]:
        return {v.id: v.point for v in self.vertices}

    @cached_property
    def _pair_cache(self) -> dict:
        return {}

    def crossings(self, i: int, j: int) -> list[CrossingPoint]:
        """Proper crossings of edges i and j, ordered along edge i's curve."""
        key = (i, j)
        cache = self._pair_cache
        if key not in cache:
            cache[key] = curve_crossings(self.edges[i].curve, self.edges[j].curve)
        return cache[key]

    def vertex_at(self, p: Point) -> int:
        for v in self.vertices:
            if v.point == p:
                return v.id
        raise KeyError(p)

    def graph(self) -> SimpleGraph:
        return SimpleGraph(tuple(v.id for v in self.vertices),
                           tuple((e.u, e.v) for e in self.edges))

    @cached_property
    def report(self) -> ValidationReport:
        return validate_drawing(self)

    def ensure_valid(self) -> "Drawing":
        if not self.report.valid:
            raise InvalidDrawing(self.report.violations)
        return self

    def without_edges(self, drop) -> "Drawing":
        drop = set(drop)
        return Drawing(self.vertices, tuple(e for i, e in enumerate(self.edges) if i not in drop))


def validate_drawing(d: Drawing) -> ValidationReport:
    """Check every structural and geometric invariant of a drawing."""
    bad: list[Violation] = []
    seen: dict[int, int] = {}
    for v in d.vertices:
        if v.id in seen:
            bad.append(Violation("duplicate-vertex-id", f"vertex id {v.id} appears twice", vertices=(v.id,)))
        seen[v.id] = 1
    by_point = defaultdict(list)
    for v in d.vertices:
        by_point[v.point].append(v.id)
    for p, ids in by_point.items():
        if len(ids) > 1:
            bad.append(Violation("coincident-vertices", f"vertices {ids} share location {p!r}", vertices=tuple(ids)))
    pos = d.positions

    good: list[int] = []
    keys: dict[frozenset, int] = {}
    for i, e in enumerate(d.edges):
        ok = True
        if e.u == e.v:
            bad.append(Violation("self-loop", f"edge {i} is a loop at {e.u}", edges=(i,)))
            ok = False
        missing = [w for w in (e.u, e.v) if w not in pos]
        if missing:
            bad.append(Violation("dangling-vertex", f"edge {i} references unknown vertex {missing}", edges=(i,)))
            ok = False
        if e.key in keys and e.u != e.v:
            bad.append(Violation("parallel-edge", f"edges {keys[e.key]} and {i} join the same pair", edges=(keys[e.key], i)))
            ok = False
        keys.setdefault(e.key, i)
        if e.curve is None:
            bad.append(Violation("invalid-curve", f"edge {i} has no usable curve", edges=(i,)))
            ok = False
        elif not missing:
            if {e.curve.start, e.curve.end} != {pos[e.u], pos[e.v]} or e.curve.start == e.curve.end:
                bad.append(Violation("endpoint-mismatch", f"edge {i}'s curve does not join its vertices", edges=(i,)))
                ok = False
            elif e.curve.self_intersects():
                bad.append(Violation("self-intersecting-curve", f"edge {i}'s curve meets itself", edges=(i,)))
                ok = False
            else:
                for w in d.vertices:
                    if w.id not in (e.u, e.v) and e.curve.contains_point(w.point):
                        bad.append(Violation("curve-through-vertex", f"edge {i} passes through vertex {w.id}",
                                             edges=(i,), vertices=(w.id,)))
                        ok = False
        if ok:
            good.append(i)

    simple = True
    at_point: dict[Point, list] = defaultdict(list)
    for i, j in combinations(good, 2):
        try:
            cr = d.crossings(i, j)
        except TangencyError as exc:
            bad.append(Violation("tangency", str(exc), edges=(i, j)))
            continue
        except OverlapError as exc:
            bad.append(Violation("overlap", str(exc), edges=(i, j)))
            continue
        except DegenerateError as exc:
            bad.append(Violation("degenerate", str(exc), edges=(i, j)))
            continue
        if len(cr) + shared_endpoints(d.edges[i].curve, d.edges[j].curve) > 1:
            simple = False
        for c in cr:
            at_point[c.location].append((i, j))
    for p, pairs in at_point.items():
        if len(pairs) > 1:
            involved = tuple(sorted({x for pr in pairs for x in pr}))
            bad.append(Violation("coincident-crossings", f"crossings of {pairs} coincide at {p!r}", edges=involved))

    xs = [v.point.x for v in d.vertices]
    x_monotone = len(set(xs)) == len(xs) and all(
        e.curve is not None and e.curve.is_x_monotone() for e in d.edges)
    simple = simple and len(good) == d.m
    return ValidationReport(simple, x_monotone, bad)


@dataclass(frozen=True)
class CrossingGraph:
    n: int
    pairs: frozenset  # of (i, j) with i < j

    def neighbors(self, i: int) -> set[int]:
        return {b if a == i else a for a, b in self.pairs if i in (a, b)}

    def degree(self, i: int) -> int:
        return sum(1 for p in self.pairs if i in p)

    def adjacent(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.pairs

    def matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.uint8)
        for i, j in self.pairs:
            a[i, j] = a[j, i] = 1
        return a


def crossing_graph(d: Drawing) -> CrossingGraph:
    d.ensure_valid()
    pairs = frozenset((i, j) for i, j in combinations(range(d.m), 2) if d.crossings(i, j))
    return CrossingGraph(d.m, pairs)


def max_pairwise_crossing(d: Drawing) -> tuple[int, tuple[int, ...]]:
    """Size and lexicographically smallest witness of a largest set of pairwise crossing edges."""
    cg = crossing_graph(d)
    if cg.n == 0:
        return 0, ()
    w = kernels.max_clique(cg.matrix())
    return len(w), tuple(w)


def is_k_quasiplanar(d: Drawing, k: int):
    """``(True, None)`` if no k edges pairwise cross, else ``(False, k-edge witness)``."""
    if k < 2:
        raise InvalidK(f"k must be at least 2, got {k}")
    size, witness = max_pairwise_crossing(d)
    if size < k:
        return True, None
    return False, witness[:k]


def crossing_count(d: Drawing) -> int:
    d.ensure_valid()
    return sum(len(d.crossings(i, j)) for i, j in combinations(range(d.m), 2))


@dataclass(frozen=True)
class BisectionCertificate:
    v1: tuple[int, ...]
    v2: tuple[int, ...]
    cut: int
    exact: bool

    def to_json(self) -> dict:
        return {"V1": list(self.v1), "V2": list(self.v2), "cut": self.cut, "exact": self.exact}


def balance_bounds(n: int) -> tuple[int, int]:
    return -(-n // 3), (2 * n) // 3


def _cut(edges, side: set) -> int:
    return sum(1 for u, v in edges if (u in side) != (v in side))


def bisection_width(g, mode: str = "exact", limit: int = DEFAULT_BISECTION_LIMIT,
                    seed: int = 0, restarts: int = 8) -> BisectionCertificate:
    """Minimum balanced cut: ceil(n/3) <= |V_i| <= floor(2n/3).

    Exact mode enumerates every admissible vertex subset (ties go to the
    smallest bitmask over sorted vertex ids).  Heuristic mode runs swap/move
    local search from seeded starts and returns an upper bound.
    """
    if isinstance(g, Drawing):
        g = g.graph()
    verts = sorted(g.vertices)
    n = len(verts)
    lo, hi = balance_bounds(n)
    if lo > hi:
        raise ValueError(f"no balanced partition exists for n={n}")
    index = {v: i for i, v in enumerate(verts)}
    edges = [(index[u], index[v]) for u, v in g.edges]
    if mode == "exact":
        if n > limit:
            raise SizeLimit(f"exact bisection limited to {limit} vertices, got {n}")
        cut, mask = kernels.min_bisection(n, edges, lo, hi)
        v1 = tuple(verts[i] for i in range(n) if mask >> i & 1)
        v2 = tuple(verts[i] for i in range(n) if not mask >> i & 1)
        return BisectionCertificate(v1, v2, cut, True)
    if mode != "heuristic":
        raise ValueError(f"unknown mode {mode!r}")
    rng = random.Random(seed)
    best = None
    for r in range(restarts):
        order = list(range(n))
        if r:
            rng.shuffle(order)
        side = set(order[: n // 2])
        cur = _cut(edges, side)
        improved = True
        while improved:
            improved = False
            for a in range(n):
                # single move keeping balance
                trial = side ^ {a}
                if lo <= len(trial) <= hi and lo <= n - len(trial) <= hi:
                    c = _cut(edges, trial)
                    if c < cur:
                        side, cur, improved = trial, c, True
                        continue
                for b in range(n):
                    if (a in side) and (b not in side):
                        trial = side - {a} | {b}
                        c = _cut(edges, trial)
                        if c < cur:
                            side, cur, improved = trial, c, True
                            break
        if best is None or cur < best[0]:
            best = (cur, side)
    cut, side = best
    v1 = tuple(verts[i] for i in sorted(side))
    v2 = tuple(verts[i] for i in range(n) if i not in side)
    return BisectionCertificate(v1, v2, cut, False)


@dataclass(frozen=True)
class BisectionReport:
    b: int
    cr_upper: int
    n: int
    m: int
    rhs: float
    holds: bool
    certificate: BisectionCertificate

    def to_json(self) -> dict:
        return {"b": self.b, "cr_upper": self.cr_upper, "n": self.n, "edges": self.m,
                "rhs": self.rhs, "holds": self.holds, "certificate": self.certificate.to_json(),
                "note": "cr_upper is the crossing count of this drawing, an upper bound on cr(G)"}


def check_bisection_inequality(d: Drawing, limit: int = DEFAULT_BISECTION_LIMIT) -> BisectionReport:
    """b(G) <= 7 sqrt(cr) + 3 sqrt(|E| n), with cr replaced by the drawing's crossing count."""
    cr = crossing_count(d)
    cert = bisection_width(d.graph(), "exact", limit=limit)
    rhs = 7 * math.sqrt(cr) + 3 * math.sqrt(d.m * d.n)
    return BisectionReport(cert.cut, cr, d.n, d.m, rhs, cert.cut <= rhs, cert)
