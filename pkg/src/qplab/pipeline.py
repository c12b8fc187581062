"""The sequence constructions of the two edge-count proofs, run on concrete drawings.

Simple drawings: walk along a heavily crossed edge and record, for every
crossing edge, the endpoint reached by turning left (S1) and right (S2).

x-monotone drawings: split the vertices by a vertical line, thin the edges
at every vertex down to a non-crossing chain on each side, and record left
and right endpoints in the order the surviving edges meet the line.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from . import dsseq
from .drawing import Drawing, is_k_quasiplanar, max_pairwise_crossing
from .errors import CoincidentCrossing, DuplicateX, NoCrossings, NoWitness, OrderViolation
from .geometry import Point, XMonotoneCurve, crossing_side, intersection_points


def thread_limit() -> int:
    try:
        return max(1, int(os.environ.get("QPLAB_THREADS", "1")))
    except ValueError:
        return 1


# -- crossing sequences along an edge -----------------------------------------

@dataclass(frozen=True)
class TraversalEntry:
    edge: int
    param: Fraction
    location: Point
    left: int
    right: int


@dataclass(frozen=True)
class EdgeCrossingTraversal:
    base: int
    u: int
    v: int
    entries: tuple[TraversalEntry, ...]

    @property
    def crossing_edges(self) -> tuple[int, ...]:
        return tuple(e.edge for e in self.entries)


@dataclass(frozen=True)
class CrossingSequences:
    s1: tuple[int, ...]
    s2: tuple[int, ...]
    traversal: EdgeCrossingTraversal


def build_crossing_sequences(d: Drawing, edge: int, reverse: bool = False) -> CrossingSequences:
    """Left/right endpoint sequences of the edges crossing ``edge``.

    The base edge is walked from its lower vertex id to the higher one
    (``reverse=True`` walks the other way).  A non-simple pair contributes
    one entry per crossing.
    """
    d.ensure_valid()
    base = d.edges[edge]
    u, v = sorted((base.u, base.v))
    if reverse:
        u, v = v, u
    forward = base.curve.start == d.positions[u]
    length = base.curve.n_segments
    entries = []
    for j, other in enumerate(d.edges):
        if j == edge:
            continue
        for c in d.crossings(edge, j):
            sides = crossing_side(base.curve, other.curve, c, forward)
            start_v = other.u if other.curve.start == d.positions[other.u] else other.v
            end_v = other.v if start_v == other.u else other.u
            left, right = (start_v, end_v) if sides.left_is_start else (end_v, start_v)
            param = c.param_a if forward else length - c.param_a
            entries.append(TraversalEntry(j, param, c.location, left, right))
    if not entries:
        raise NoCrossings(f"edge {edge} is not crossed")
    entries.sort(key=lambda t: t.param)
    trav = EdgeCrossingTraversal(edge, u, v, tuple(entries))
    return CrossingSequences(tuple(t.left for t in entries), tuple(t.right for t in entries), trav)


def crossed_edges(d: Drawing) -> list[int]:
    return [i for i in range(d.m) if any(d.crossings(i, j) for j in range(d.m) if j != i)]


def all_crossing_sequences(d: Drawing) -> dict[int, CrossingSequences]:
    """Sequences for every crossed edge; threads capped by QPLAB_THREADS."""
    d.ensure_valid()
    edges = crossed_edges(d)
    with ThreadPoolExecutor(max_workers=thread_limit()) as pool:
        results = list(pool.map(lambda e: build_crossing_sequences(d, e), edges))
    return dict(zip(edges, results))


def heaviest_edge(d: Drawing) -> tuple[int, int]:
    """Edge crossed by the most distinct other edges (lowest index on ties)."""
    d.ensure_valid()
    best, count = -1, 0
    for i in range(d.m):
        c = sum(1 for j in range(d.m) if j != i and d.crossings(i, j))
        if c > count:
            best, count = i, c
    if count == 0:
        raise NoCrossings("the drawing has no crossings")
    return best, count


@dataclass(frozen=True)
class RegularReport:
    l: int
    crossing_count: int
    best_length: int
    best_sequence: str
    required: Fraction
    holds: bool
    indices: tuple[int, ...]


def check_lemma_regular(s1, s2, l: int, mode: str = "exact",
                        max_length: int | None = None, max_l: int | None = None) -> RegularReport:
    """Does S1 or S2 hold an l-regular subsequence of length >= |E'| / (4l)?"""
    if len(s1) != len(s2):
        raise ValueError("S1 and S2 must come from the same traversal")
    r1 = dsseq.longest_l_regular_subsequence(s1, l, mode, max_length=max_length, max_l=max_l)
    r2 = dsseq.longest_l_regular_subsequence(s2, l, mode, max_length=max_length, max_l=max_l)
    which, (best, idx) = ("S1", r1) if r1[0] >= r2[0] else ("S2", r2)
    required = Fraction(len(s1), 4 * l)
    return RegularReport(l, len(s1), best, which, required, best >= required, idx)


@dataclass
class ForbiddenUpReport:
    edge: int
    k: int
    l: int
    t: int
    threshold: int
    length: int
    status: str  # vacuously-absent | absent | found
    occurrence: dict = field(default_factory=dict)
    crossing_witness: tuple[int, ...] = ()
    refutation: bool = False
    exploration: dict = field(default_factory=dict)


def check_forbidden_up(d: Drawing, edge: int, k: int, explore: tuple[int, int] | None = None,
                       max_alphabet: int | None = dsseq.DEFAULT_MAX_ALPHABET,
                       max_l: int | None = dsseq.DEFAULT_MAX_L) -> ForbiddenUpReport:
    """Look for up(2^(k^2+k), 2^k) in S1/S2 of a simple drawing.

    Finding it obliges the drawing to contain k pairwise crossing edges;
    if it does not, the report carries ``refutation=True``.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if not d.report.simple:
        raise ValueError("the up-pattern check applies to simple drawings")
    seqs = build_crossing_sequences(d, edge)
    l, t = 2 ** (k * k + k), 2 ** k
    rep = ForbiddenUpReport(edge, k, l, t, l * t, len(seqs.s1), "absent")
    if len(seqs.s1) < l * t:
        rep.status = "vacuously-absent"
    else:
        for name, s in (("S1", seqs.s1), ("S2", seqs.s2)):
            occ = dsseq.contains_up(s, l, t, max_alphabet=max_alphabet, max_l=max_l)
            if occ is not None:
                rep.status = "found"
                rep.occurrence = {"sequence": name, **occ.to_json()}
                break
        if rep.status == "found":
            size, witness = max_pairwise_crossing(d)
            if size >= k:
                rep.crossing_witness = witness[:k]
            else:
                rep.refutation = True
    if explore is not None:
        el, et = explore
        for name, s in (("S1", seqs.s1), ("S2", seqs.s2)):
            occ = dsseq.contains_up(s, el, et, max_alphabet=max_alphabet, max_l=max_l)
            rep.exploration[name] = None if occ is None else occ.to_json()
    return rep


# -- x-monotone pipeline ------------------------------------------------------

@dataclass(frozen=True)
class VerticalSplit:
    line_x: Fraction
    v1: tuple[int, ...]
    v2: tuple[int, ...]
    e1: tuple[int, ...]
    e2: tuple[int, ...]
    e_cross: tuple[int, ...]

    def left_end(self, d: Drawing, e: int) -> int:
        edge = d.edges[e]
        return edge.u if edge.u in self.v1 else edge.v

    def right_end(self, d: Drawing, e: int) -> int:
        edge = d.edges[e]
        return edge.u if edge.u in self.v2 else edge.v


def vertical_split(d: Drawing) -> VerticalSplit:
    """Vertical line with floor(n/2) vertices on its left and ceil(n/2) on its right."""
    d.ensure_valid()
    xs = [v.point.x for v in d.vertices]
    if len(set(xs)) != len(xs):
        raise DuplicateX("vertex x-coordinates must be distinct")
    if not all(e.curve.is_x_monotone() for e in d.edges):
        raise ValueError("every edge must be x-monotone")
    order = sorted(d.vertices, key=lambda v: v.point.x)
    h = len(order) // 2
    if not order:
        line = Fraction(0)
    elif h == 0:
        line = order[0].point.x - 1
    else:
        line = (order[h - 1].point.x + order[h].point.x) / 2
    v1 = tuple(sorted(v.id for v in order[:h]))
    v2 = tuple(sorted(v.id for v in order[h:]))
    left = set(v1)
    e1, e2, ex = [], [], []
    for i, e in enumerate(d.edges):
        a, b = e.u in left, e.v in left
        (e1 if a and b else e2 if not a and not b else ex).append(i)
    return VerticalSplit(line, v1, v2, tuple(e1), tuple(e2), tuple(ex))


def _y_at_line(d: Drawing, e: int, x: Fraction) -> Fraction:
    return XMonotoneCurve.from_curve(d.edges[e].curve).y_at(x)


def _cross_on_side(d: Drawing, a: int, b: int, line: Fraction, side: str) -> bool:
    for c in d.crossings(a, b):
        if c.location.x == line:
            raise CoincidentCrossing(f"edges {a} and {b} cross on the split line")
        if (c.location.x < line) == (side == "left"):
            return True
    return False


def _validate_order(elements, less) -> None:
    for a in elements:
        if less(a, a):
            raise OrderViolation(f"{a} precedes itself")
    for a, b in combinations(elements, 2):
        if less(a, b) and less(b, a):
            raise OrderViolation(f"{a} and {b} precede each other")
    for a in elements:
        for b in elements:
            if not less(a, b):
                continue
            for c in elements:
                if less(b, c) and not less(a, c):
                    raise OrderViolation(f"{a} < {b} < {c} but not {a} < {c}")


def _longest_chain(elements, less) -> list:
    """Longest chain; ``elements`` must be a linear extension of ``less``."""
    best: list[list] = []
    for i, a in enumerate(elements):
        prev = [best[j] for j in range(i) if less(elements[j], a)]
        base = max(prev, key=len) if prev else []
        best.append(base + [a])
    return max(best, key=len) if best else []


@dataclass(frozen=True)
class VertexFilter:
    vertex: int
    total: int
    kept: int
    required: int
    chain: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return self.kept >= self.required

    def to_json(self) -> dict:
        return {"vertex": self.vertex, "total": self.total, "kept": self.kept,
                "required": self.required, "chain": list(self.chain), "ok": self.ok}


@dataclass(frozen=True)
class FilterResult:
    side: str
    k: int
    before: int
    retained: tuple[int, ...]
    per_vertex: tuple[VertexFilter, ...]

    @property
    def guarantee_ok(self) -> bool:
        return all(f.ok for f in self.per_vertex)

    def to_json(self) -> dict:
        return {"side": self.side, "k": self.k, "before": self.before,
                "retained": list(self.retained), "retained_count": len(self.retained),
                "per_vertex": [f.to_json() for f in self.per_vertex],
                "guarantee_ok": self.guarantee_ok}


def dilworth_chain_filter(d: Drawing, split: VerticalSplit, side: str, k: int,
                          edges=None) -> FilterResult:
    """Keep, at every vertex on ``side``, a largest family of its edges that
    pairwise do not cross on that side of the line.

    Two such edges are comparable when they do not cross there; the one
    meeting the line lower is below.  The crossing graph at the vertex is the
    incomparability graph of this order, so a longest chain is a maximum
    independent set, of size >= total / (k - 1) when no k edges pairwise cross.
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    if k < 2:
        raise ValueError("k must be at least 2")
    edges = tuple(split.e_cross if edges is None else edges)
    owners = split.v1 if side == "left" else split.v2
    end = split.left_end if side == "left" else split.right_end
    line = split.line_x
    groups: dict[int, list[int]] = {v: [] for v in owners}
    for e in edges:
        groups[end(d, e)].append(e)
    kept_all: list[int] = []
    reports = []
    for v in owners:
        group = groups[v]
        if not group:
            continue
        ys = {e: _y_at_line(d, e, line) for e in group}
        if len(set(ys.values())) != len(ys):
            raise CoincidentCrossing(f"edges at vertex {v} meet the split line at one point")
        crossing = {frozenset((a, b)) for a, b in combinations(group, 2)
                    if _cross_on_side(d, a, b, line, side)}

        def below(a, b):
            return a != b and frozenset((a, b)) not in crossing and ys[a] < ys[b]

        ordered = sorted(group, key=lambda e: ys[e])
        _validate_order(ordered, below)
        chain = _longest_chain(ordered, below)
        required = -(-len(group) // (k - 1))
        reports.append(VertexFilter(v, len(group), len(chain), required, tuple(chain)))
        kept_all.extend(chain)
    return FilterResult(side, k, len(edges), tuple(sorted(kept_all)), tuple(reports))


def build_L_sequences(d: Drawing, split: VerticalSplit, retained) -> tuple[tuple, tuple, tuple]:
    """(S1, S2, edge order) with edges sorted by where they meet the line, bottom to top."""
    ys = {e: _y_at_line(d, e, split.line_x) for e in retained}
    if len(set(ys.values())) != len(ys):
        raise CoincidentCrossing("two retained edges meet the split line at one point")
    order = tuple(sorted(retained, key=lambda e: ys[e]))
    return (tuple(split.left_end(d, e) for e in order),
            tuple(split.right_end(d, e) for e in order), order)


# -- the two arc orders and the Dilworth witness ------------------------------

@dataclass(frozen=True)
class Arc:
    index: int
    x: Fraction
    curve: XMonotoneCurve


@dataclass(frozen=True)
class ArcOrder:
    kind: str  # "prec1" or "prec2"
    size: int
    pairs: frozenset  # (i, j) with arc i before arc j

    def less(self, i: int, j: int) -> bool:
        return (i, j) in self.pairs


def arcs_from_curves(curves) -> list[Arc]:
    """Index x-monotone arcs ending on a common vertical line from top to bottom."""
    xm = [XMonotoneCurve.from_curve(c) for c in curves]
    ends = {c.end.x for c in xm}
    if len(ends) != 1:
        raise ValueError("arcs must end on one vertical line")
    if len({c.end.y for c in xm}) != len(xm):
        raise CoincidentCrossing("two arcs end at the same point of the line")
    xm.sort(key=lambda c: -c.end.y)
    return [Arc(i, c.start.x, c) for i, c in enumerate(xm)]


def arc_orders(arcs) -> tuple[ArcOrder, ArcOrder, frozenset]:
    """Materialize both orders and the intersecting pairs, validating transitivity."""
    if len({a.x for a in arcs}) != len(arcs):
        raise DuplicateX("arc start x-coordinates must be distinct")
    meet = frozenset((a.index, b.index) for a, b in combinations(arcs, 2)
                     if intersection_points(a.curve, b.curve))
    p1, p2 = set(), set()
    for a, b in combinations(sorted(arcs, key=lambda a: a.index), 2):
        if (a.index, b.index) in meet:
            continue
        (p1 if a.x < b.x else p2).add((a.index, b.index))
    o1 = ArcOrder("prec1", len(arcs), frozenset(p1))
    o2 = ArcOrder("prec2", len(arcs), frozenset(p2))
    idx = [a.index for a in arcs]
    for o in (o1, o2):
        _validate_order(idx, o.less)
    return o1, o2, meet


def _lex_chain(n: int, less, k: int):
    up = [1] * n
    for i in range(n - 1, -1, -1):
        for j in range(i + 1, n):
            if less(i, j):
                up[i] = max(up[i], 1 + up[j])
    chain: list[int] = []
    for i in range(n):
        if up[i] >= k - len(chain) and (not chain or less(chain[-1], i)):
            chain.append(i)
            if len(chain) == k:
                return tuple(chain)
    return None


def _lex_clique(n: int, adjacent, k: int):
    def extend(cur, start):
        if len(cur) == k:
            return tuple(cur)
        for v in range(start, n):
            if all(adjacent(u, v) for u in cur):
                r = extend(cur + [v], v + 1)
                if r:
                    return r
        return None
    return extend([], 0)


@dataclass(frozen=True)
class DilworthWitness:
    kind: str  # chain1 | chain2 | crossing-clique
    members: tuple[int, ...]


def dilworth_witness(arcs, k: int) -> DilworthWitness:
    """k arcs forming a chain in either order, or k pairwise intersecting arcs.

    Always succeeds once there are at least (k - 1)^3 + 1 arcs.  Preference:
    chain1, chain2, crossing-clique; each is the lexicographically smallest
    of its kind.
    """
    o1, o2, meet = arc_orders(arcs)
    n = len(arcs)
    for kind, o in (("chain1", o1), ("chain2", o2)):
        c = _lex_chain(n, o.less, k)
        if c is not None:
            return DilworthWitness(kind, c)
    c = _lex_clique(n, lambda i, j: (min(i, j), max(i, j)) in meet, k)
    if c is not None:
        return DilworthWitness("crossing-clique", c)
    raise NoWitness(f"no {k}-witness among {n} arcs")


@dataclass
class XMonoReport:
    k: int
    split: dict
    quasiplanar: bool
    left: FilterResult
    right: FilterResult
    s1: tuple[int, ...]
    s2: tuple[int, ...]
    retention_required: Fraction
    retention_ok: bool
    l: int
    threshold: int
    status: str
    occurrence: dict = field(default_factory=dict)
    refutation: bool = False
    counting: dict = field(default_factory=dict)
    exploration: dict = field(default_factory=dict)


def run_xmono_pipeline(d: Drawing, k: int):
    split = vertical_split(d)
    left = dilworth_chain_filter(d, split, "left", k)
    right = dilworth_chain_filter(d, split, "right", k, edges=left.retained)
    s1, s2, order = build_L_sequences(d, split, right.retained)
    return split, left, right, s1, s2


def check_forbidden_udu(d: Drawing, k: int, explore_l: int | None = None,
                        max_alphabet: int | None = None, max_l: int | None = None,
                        udu_bound_constants: tuple[int, int] = (1, 10)) -> XMonoReport:
    """Full vertical-split pipeline plus the up-down-up(k^3 + 2) check.

    Finding the pattern in a k-quasi-planar drawing is a refutation.  The
    final counting step is audited with the configured (c1, c2) and reported
    without being asserted.
    """
    split, left, right, s1, s2 = run_xmono_pipeline(d, k)
    quasi, _ = is_k_quasiplanar(d, k)
    l = k ** 3 + 2
    n_cross = len(split.e_cross)
    required = Fraction(n_cross, (k - 1) ** 2)
    rep = XMonoReport(
        k=k,
        split={"line_x": split.line_x, "V1": len(split.v1), "V2": len(split.v2),
               "E1": len(split.e1), "E2": len(split.e2), "E_cross": n_cross},
        quasiplanar=quasi, left=left, right=right, s1=s1, s2=s2,
        retention_required=required, retention_ok=len(right.retained) >= required,
        l=l, threshold=3 * l - 2, status="absent")
    if len(s1) < 3 * l - 2:
        rep.status = "vacuously-absent"
    else:
        for name, s in (("S1", s1), ("S2", s2)):
            occ = dsseq.contains_up_down_up(s, l, max_alphabet=max_alphabet, max_l=max_l)
            if occ is not None:
                rep.status = "found"
                rep.occurrence = {"sequence": name, **occ.to_json()}
                rep.refutation = quasi
                break
    c1, c2 = udu_bound_constants
    if s1:
        # the DP state space grows with the alphabet, not the length
        best = None
        if len(set(s1) | set(s2)) <= dsseq.DEFAULT_MAX_ALPHABET:
            best = max(dsseq.longest_l_regular_subsequence(s, l, max_length=None, max_l=None)[0]
                       for s in (s1, s2))
        bound = dsseq.udu_free_bound(d.n, l, c1, c2)
        rep.counting = {
            "retained": len(s1), "l": l, "best_regular": best,
            "regular_required": Fraction(len(s1), 4 * l),
            "udu_free_bound": bound, "constants": {"c1": c1, "c2": c2},
            "E_cross_bound": 4 * l * (k - 1) ** 2 * bound,
            "E_cross_within_bound": n_cross <= 4 * l * (k - 1) ** 2 * bound,
        }
    if explore_l is not None:
        for name, s in (("S1", s1), ("S2", s2)):
            occ = dsseq.contains_up_down_up(s, explore_l, max_alphabet=max_alphabet, max_l=max_l)
            rep.exploration[name] = None if occ is None else occ.to_json()
    return rep
