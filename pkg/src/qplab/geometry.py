"""Exact rational geometry: points, polyline curves and crossing predicates.

Every predicate works on :class:`fractions.Fraction` coordinates, so no
epsilon appears anywhere.  Curves are polylines; a crossing is *proper* when
one curve passes from one side of the other to the other side, which is
decided from the local rays around the intersection point (this also covers
crossings that happen exactly at a bend).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Union

from .errors import DegenerateError, InvalidCurve, OverlapError, TangencyError

Rational = Union[int, str, Fraction]


def to_rational(value: Rational) -> Fraction:
    """Coerce ``value`` to a Fraction.

    Strings may be integers, decimals (``"1.25"``) or ratios (``"3/7"``).
    Floats are rejected on purpose: they would smuggle rounding in.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"refusing inexact coordinate {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as a rational")


def format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True, order=True)
class Point:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        if not isinstance(self.x, Fraction):
            object.__setattr__(self, "x", to_rational(self.x))
        if not isinstance(self.y, Fraction):
            object.__setattr__(self, "y", to_rational(self.y))

    def __repr__(self):
        return f"Point({format_rational(self.x)}, {format_rational(self.y)})"


def _cross(ax, ay, bx, by):
    return ax * by - ay * bx


def orient(p: Point, q: Point, r: Point) -> int:
    """Sign of the turn p -> q -> r: +1 left, -1 right, 0 collinear."""
    d = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)
    return (d > 0) - (d < 0)


# -- interval filter ---------------------------------------------------------

def _widen(lo: float, hi: float) -> tuple[float, float]:
    return math.nextafter(lo, -math.inf), math.nextafter(hi, math.inf)


def _ival(v: Fraction) -> tuple[float, float]:
    f = float(v)
    return _widen(f, f)


def _isub(a, b):
    return _widen(a[0] - b[1], a[1] - b[0])


def _imul(a, b):
    prods = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return _widen(min(prods), max(prods))


def orient_interval(p: Point, q: Point, r: Point) -> int | None:
    """Floating-point interval version of :func:`orient`.

    Returns the sign when the enclosing interval excludes zero and ``None``
    when the filter is inconclusive.
    """
    px, py = _ival(p.x), _ival(p.y)
    det = _isub(
        _imul(_isub(_ival(q.x), px), _isub(_ival(r.y), py)),
        _imul(_isub(_ival(q.y), py), _isub(_ival(r.x), px)),
    )
    if not all(map(math.isfinite, det)):
        return None
    if det[0] > 0:
        return 1
    if det[1] < 0:
        return -1
    return None


# -- curves ------------------------------------------------------------------

@dataclass(frozen=True)
class PolylineCurve:
    waypoints: tuple[Point, ...]

    def __post_init__(self):
        pts = tuple(p if isinstance(p, Point) else Point(*p) for p in self.waypoints)
        object.__setattr__(self, "waypoints", pts)
        if len(pts) < 2:
            raise InvalidCurve("a curve needs at least two waypoints")
        for a, b in zip(pts, pts[1:]):
            if a == b:
                raise InvalidCurve(f"repeated consecutive waypoint {a!r}")

    @classmethod
    def of(cls, *coords) -> "PolylineCurve":
        return cls(tuple(Point(x, y) for x, y in coords))

    @property
    def start(self) -> Point:
        return self.waypoints[0]

    @property
    def end(self) -> Point:
        return self.waypoints[-1]

    @property
    def n_segments(self) -> int:
        return len(self.waypoints) - 1

    def segments(self):
        return list(zip(self.waypoints, self.waypoints[1:]))

    def reversed(self) -> "PolylineCurve":
        return PolylineCurve(self.waypoints[::-1])

    def bbox(self):
        xs = [p.x for p in self.waypoints]
        ys = [p.y for p in self.waypoints]
        return min(xs), min(ys), max(xs), max(ys)

    def is_x_monotone(self) -> bool:
        """True if x strictly increases or strictly decreases along the curve."""
        dx = [b.x - a.x for a, b in zip(self.waypoints, self.waypoints[1:])]
        return all(d > 0 for d in dx) or all(d < 0 for d in dx)

    def point_at(self, param: Fraction) -> Point:
        i, frac = _split_param(param, self.n_segments)
        a = self.waypoints[i]
        if frac == 0:
            return a
        b = self.waypoints[i + 1]
        return Point(a.x + frac * (b.x - a.x), a.y + frac * (b.y - a.y))

    def contains_point(self, p: Point) -> bool:
        for a, b in self.segments():
            if _on_segment(a, b, p):
                return True
        return False

    def interior_contains(self, p: Point) -> bool:
        return p != self.start and p != self.end and self.contains_point(p)

    def self_intersects(self) -> bool:
        segs = self.segments()
        if len(segs) >= 2 and self.start == self.end:
            return True
        for i in range(len(segs)):
            for j in range(i + 1, len(segs)):
                a0, a1 = segs[i]
                b0, b1 = segs[j]
                if j == i + 1:
                    # adjacent segments meet at a1 == b0; anything more is a fold-back
                    if orient(a0, a1, b1) == 0 and _dot(a0.x - a1.x, a0.y - a1.y, b1.x - a1.x, b1.y - a1.y) > 0:
                        return True
                    continue
                try:
                    hits = segment_intersection(a0, a1, b0, b1)
                except OverlapError:
                    return True
                if hits:
                    return True
        return False


class XMonotoneCurve(PolylineCurve):
    """Polyline whose waypoint x-coordinates strictly increase."""

    def __post_init__(self):
        super().__post_init__()
        for a, b in zip(self.waypoints, self.waypoints[1:]):
            if not a.x < b.x:
                raise InvalidCurve("x-coordinates must strictly increase")

    @classmethod
    def from_curve(cls, curve: PolylineCurve) -> "XMonotoneCurve":
        pts = curve.waypoints
        if pts[0].x > pts[-1].x:
            pts = pts[::-1]
        return cls(pts)

    def y_at(self, x: Rational) -> Fraction:
        x = to_rational(x)
        pts = self.waypoints
        if not pts[0].x <= x <= pts[-1].x:
            raise ValueError(f"x={x} outside the curve's range")
        for a, b in zip(pts, pts[1:]):
            if a.x <= x <= b.x:
                return a.y + (x - a.x) * (b.y - a.y) / (b.x - a.x)
        raise AssertionError("unreachable")


def _dot(ax, ay, bx, by):
    return ax * bx + ay * by


def _on_segment(a: Point, b: Point, p: Point) -> bool:
    if orient(a, b, p) != 0:
        return False
    return min(a.x, b.x) <= p.x <= max(a.x, b.x) and min(a.y, b.y) <= p.y <= max(a.y, b.y)


def _split_param(param: Fraction, n_segments: int) -> tuple[int, Fraction]:
    i = math.floor(param)
    if i >= n_segments:
        return n_segments, Fraction(0)
    return i, param - i


def segment_intersection(p1: Point, p2: Point, q1: Point, q2: Point):
    """Intersection of closed segments p1p2 and q1q2.

    Returns a list with at most one ``(point, s, u)`` triple where ``s`` and
    ``u`` are the parameters along each segment.  A collinear overlap of
    positive length raises :class:`OverlapError`.
    """
    if (max(p1.x, p2.x) < min(q1.x, q2.x) or max(q1.x, q2.x) < min(p1.x, p2.x)
            or max(p1.y, p2.y) < min(q1.y, q2.y) or max(q1.y, q2.y) < min(p1.y, p2.y)):
        return []
    d1x, d1y = p2.x - p1.x, p2.y - p1.y
    d2x, d2y = q2.x - q1.x, q2.y - q1.y
    wx, wy = q1.x - p1.x, q1.y - p1.y
    denom = _cross(d1x, d1y, d2x, d2y)
    if denom != 0:
        s = _cross(wx, wy, d2x, d2y) / denom
        u = _cross(wx, wy, d1x, d1y) / denom
        if 0 <= s <= 1 and 0 <= u <= 1:
            return [(Point(p1.x + s * d1x, p1.y + s * d1y), s, u)]
        return []
    if _cross(wx, wy, d1x, d1y) != 0:
        return []
    n1 = _dot(d1x, d1y, d1x, d1y)
    t0 = _dot(wx, wy, d1x, d1y) / n1
    t1 = _dot(q2.x - p1.x, q2.y - p1.y, d1x, d1y) / n1
    lo, hi = max(Fraction(0), min(t0, t1)), min(Fraction(1), max(t0, t1))
    if lo > hi:
        return []
    if lo < hi:
        raise OverlapError(f"segments {p1!r}-{p2!r} and {q1!r}-{q2!r} overlap")
    pt = Point(p1.x + lo * d1x, p1.y + lo * d1y)
    u = _dot(pt.x - q1.x, pt.y - q1.y, d2x, d2y) / _dot(d2x, d2y, d2x, d2y)
    return [(pt, lo, u)]


# -- local structure at an intersection point ---------------------------------

def _pseudo_angle(dx: Fraction, dy: Fraction) -> Fraction:
    # monotone in the true angle, values in [0, 4)
    p = dy / (abs(dx) + abs(dy))
    if dx < 0:
        return 2 - p
    if dy < 0:
        return 4 + p
    return p


def _rel_angle(base, d) -> Fraction:
    return (_pseudo_angle(*d) - _pseudo_angle(*base)) % 4


def _rays(curve: PolylineCurve, param: Fraction):
    """Directions from the point at ``param`` toward the curve's start and end.

    Either entry is ``None`` when the point is that endpoint.
    """
    i, frac = _split_param(param, curve.n_segments)
    w = curve.waypoints
    here = curve.point_at(param)
    if frac == 0:
        back = w[i - 1] if i > 0 else None
        fwd = w[i + 1] if i < len(w) - 1 else None
    else:
        back, fwd = w[i], w[i + 1]

    def direction(p):
        return None if p is None else (p.x - here.x, p.y - here.y)

    return direction(back), direction(fwd)


def _same_direction(d1, d2) -> bool:
    return _cross(*d1, *d2) == 0 and _dot(*d1, *d2) > 0


@dataclass(frozen=True)
class CrossingPoint:
    location: Point
    seg_a: int
    seg_b: int
    param_a: Fraction
    param_b: Fraction


def _classify(a: PolylineCurve, b: PolylineCurve, pt: Point, pa: Fraction, pb: Fraction) -> bool:
    """True for a proper crossing, False for a shared endpoint; raises otherwise."""
    a_end = pt == a.start or pt == a.end
    b_end = pt == b.start or pt == b.end
    ra_back, ra_fwd = _rays(a, pa)
    rb_back, rb_fwd = _rays(b, pb)
    if a_end and b_end:
        da = ra_back or ra_fwd
        db = rb_back or rb_fwd
        if _same_direction(da, db):
            raise OverlapError(f"curves leave the shared endpoint {pt!r} along the same ray")
        return False
    if a_end or b_end:
        raise TangencyError(f"an endpoint touches the other curve at {pt!r}")
    theta = _rel_angle(ra_back, ra_fwd)
    if theta == 0:
        raise DegenerateError(f"curve folds back on itself at {pt!r}")
    phis = (_rel_angle(ra_back, rb_back), _rel_angle(ra_back, rb_fwd))
    if any(phi == 0 or phi == theta for phi in phis):
        raise OverlapError(f"curves run along each other at {pt!r}")
    inside = [0 < phi < theta for phi in phis]
    if inside[0] == inside[1]:
        raise TangencyError(f"curves touch without crossing at {pt!r}")
    return True


def intersection_points(a: PolylineCurve, b: PolylineCurve) -> dict[Point, tuple]:
    """Every common point of two curves with its parameters along each.

    Overlaps raise; the result maps point -> (param_a, param_b) using the
    lowest segment indices at which the point is seen.
    """
    ax0, ay0, ax1, ay1 = a.bbox()
    bx0, by0, bx1, by1 = b.bbox()
    if ax1 < bx0 or bx1 < ax0 or ay1 < by0 or by1 < ay0:
        return {}
    found: dict[Point, tuple] = {}
    for i, (p1, p2) in enumerate(a.segments()):
        for j, (q1, q2) in enumerate(b.segments()):
            for pt, s, u in segment_intersection(p1, p2, q1, q2):
                if pt not in found:
                    found[pt] = (i + s, j + u)
    return found


def curve_crossings(a: PolylineCurve, b: PolylineCurve) -> list[CrossingPoint]:
    """All proper interior crossings of ``a`` and ``b``, ordered along ``a``.

    Meeting at a shared endpoint is not a crossing.  A touch without a side
    change raises :class:`TangencyError`, a shared piece :class:`OverlapError`.
    """
    out = []
    for pt, (pa, pb) in intersection_points(a, b).items():
        if _classify(a, b, pt, pa, pb):
            ia, _ = _split_param(pa, a.n_segments)
            ib, _ = _split_param(pb, b.n_segments)
            out.append(CrossingPoint(pt, min(ia, a.n_segments - 1), min(ib, b.n_segments - 1), pa, pb))
    out.sort(key=lambda c: c.param_a)
    return out


def shared_endpoints(a: PolylineCurve, b: PolylineCurve) -> int:
    return len({a.start, a.end} & {b.start, b.end})


def is_simple_pair(a: PolylineCurve, b: PolylineCurve) -> bool:
    """At most one common point, counting a shared endpoint as one."""
    return len(curve_crossings(a, b)) + shared_endpoints(a, b) <= 1


class Sides(NamedTuple):
    left: Point
    right: Point
    left_is_start: bool


def crossing_side(a: PolylineCurve, b: PolylineCurve, crossing: CrossingPoint,
                  forward: bool = True) -> Sides:
    """Which endpoint of ``b`` is reached by turning left/right off ``a``.

    ``crossing`` must come from ``curve_crossings(a, b)``.  ``forward``
    traverses ``a`` from its first waypoint to its last.  The answer does not
    depend on how ``b`` is stored.
    """
    back, fwd = _rays(a, crossing.param_a)
    if not forward:
        back, fwd = fwd, back
    to_start, to_end = _rays(b, crossing.param_b)
    if back is None or fwd is None or to_start is None or to_end is None:
        raise DegenerateError("crossing is not interior to both curves")
    theta = _rel_angle(fwd, back)
    phi_s = _rel_angle(fwd, to_start)
    phi_e = _rel_angle(fwd, to_end)
    if phi_s in (0, theta) or phi_e in (0, theta):
        raise DegenerateError("tangent directions are collinear at the crossing")
    start_left = 0 < phi_s < theta
    if start_left == (0 < phi_e < theta):
        raise DegenerateError("curves do not cross properly here")
    if start_left:
        return Sides(b.start, b.end, True)
    return Sides(b.end, b.start, False)
