from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qplab.errors import DegenerateError, InvalidCurve, OverlapError, TangencyError
from qplab.geometry import (Point, PolylineCurve, XMonotoneCurve, crossing_side, curve_crossings,
                            format_rational, is_simple_pair, orient, orient_interval,
                            segment_intersection, to_rational)

from oracles import segments_properly_cross

P = Point
seg = PolylineCurve.of


def test_orient_examples():
    assert orient(P(0, 0), P(1, 0), P(0, 1)) == 1
    assert orient(P(0, 0), P(1, 0), P(2, 0)) == 0
    assert orient(P(0, 0), P(1, 0), P(1, -1)) == -1


def test_rational_parsing_is_exact():
    assert to_rational("1.5") == Fraction(3, 2)
    assert to_rational("3/7") == Fraction(3, 7)
    assert format_rational(Fraction(-6, 4)) == "-3/2"
    with pytest.raises(TypeError):
        to_rational(0.1)
    # a third of a unit stays a third
    assert orient(P(0, 0), P(3, 1), P("1", "1/3")) == 0


def test_curve_validation():
    with pytest.raises(InvalidCurve):
        PolylineCurve((P(0, 0),))
    with pytest.raises(InvalidCurve):
        seg((0, 0), (0, 0), (1, 1))
    assert seg((0, 0), (2, 0), (2, 2), (1, -1)).self_intersects()
    assert not seg((0, 0), (1, 1), (2, 0)).self_intersects()


def test_x_monotone():
    assert seg((0, 0), (1, 5), (3, -2)).is_x_monotone()
    assert not seg((0, 0), (1, 5), (0, 7)).is_x_monotone()
    c = XMonotoneCurve.from_curve(seg((4, 0), (2, 2), (0, 0)))
    assert c.start == P(0, 0) and c.y_at(Fraction(1)) == 1


def test_symmetric_x():
    cs = curve_crossings(seg((0, 0), (2, 2)), seg((0, 2), (2, 0)))
    assert [c.location for c in cs] == [P(1, 1)]


def test_parallel_disjoint():
    assert curve_crossings(seg((0, 0), (1, 0)), seg((0, 1), (1, 1))) == []


def test_two_crossing_pair():
    a = seg((0, 0), (2, 0))
    b = seg((1, -1), (1, 1), ("1.5", -1))
    cs = curve_crossings(a, b)
    assert len(cs) == 2
    assert cs[0].location == P(1, 0)
    assert 1 < cs[1].location.x < Fraction(3, 2)
    # oracle: count properly crossing segment pairs
    n = sum(segments_properly_cross(p, q, r, s)
            for p, q in zip(a.waypoints, a.waypoints[1:])
            for r, s in zip(b.waypoints, b.waypoints[1:]))
    assert n == 2
    assert not is_simple_pair(a, b)


def test_simple_pairs():
    assert is_simple_pair(seg((0, 0), (1, 0)), seg((0, 1), (1, 1)))
    assert is_simple_pair(seg((0, 0), (1, 0)), seg((0, 0), (0, 1)))
    # sharing an endpoint and crossing elsewhere is two intersections
    a = seg((0, 0), (4, 0))
    b = seg((0, 0), (1, 1), (2, -1))
    assert len(curve_crossings(a, b)) == 1
    assert not is_simple_pair(a, b)


def test_tangency_and_overlap_are_errors():
    with pytest.raises(TangencyError):
        curve_crossings(seg((0, 0), (2, 0)), seg((0, 1), (1, 0), (2, 1)))
    with pytest.raises(OverlapError):
        curve_crossings(seg((0, 0), (2, 0)), seg((1, 0), (3, 0)))
    with pytest.raises(TangencyError):
        # endpoint of one curve lies inside the other
        curve_crossings(seg((0, 0), (2, 0)), seg((1, 0), (1, 1)))


def test_crossing_on_a_bend_is_proper():
    a = seg((0, 0), (1, 0), (2, 1))  # bend at (1, 0)
    b = seg((1, -1), (1, 1))
    cs = curve_crossings(a, b)
    assert [c.location for c in cs] == [P(1, 0)]
    # touching at a bend without switching sides is rejected
    with pytest.raises(TangencyError):
        curve_crossings(seg((0, 1), (1, 0), (2, 1)), seg((0, -1), (1, 0), (2, -1)))


def test_crossing_side_examples():
    a = seg((0, 0), (2, 0))
    b = seg((1, -1), (1, 1))
    c = curve_crossings(a, b)[0]
    s = crossing_side(a, b, c)
    assert (s.left, s.right) == (P(1, 1), P(1, -1))
    br = b.reversed()
    s2 = crossing_side(a, br, curve_crossings(a, br)[0])
    assert (s2.left, s2.right) == (P(1, 1), P(1, -1))
    a = seg((0, 0), (2, 2))
    b = seg((0, 2), (2, 0))
    s3 = crossing_side(a, b, curve_crossings(a, b)[0])
    assert s3.left == P(0, 2)
    # oracle: the left endpoint is left of the directed base edge
    assert orient(a.start, a.end, s3.left) == 1


coord = st.integers(-30, 30)
point = st.builds(P, coord, coord)
frac = st.fractions(min_value=-20, max_value=20, max_denominator=50)
fpoint = st.builds(P, frac, frac)


@given(fpoint, fpoint, fpoint)
def test_orient_antisymmetric(p, q, r):
    assert orient(p, q, r) == -orient(p, r, q)


@given(fpoint, fpoint, fpoint)
def test_interval_filter_agrees_when_conclusive(p, q, r):
    fast = orient_interval(p, q, r)
    if fast is not None:
        assert fast == orient(p, q, r)


def test_interval_filter_defers_on_degenerate_input():
    p, q = P("1/3", "1/3"), P("2/3", "2/3")
    assert orient_interval(p, q, P("1/7", "1/7")) in (None, 0)


@settings(max_examples=300)
@given(point, point, point, point)
def test_crossings_symmetric(a0, a1, b0, b1):
    if a0 == a1 or b0 == b1:
        return
    a, b = PolylineCurve((a0, a1)), PolylineCurve((b0, b1))
    try:
        ab = {c.location for c in curve_crossings(a, b)}
    except (TangencyError, OverlapError):
        with pytest.raises((TangencyError, OverlapError)):
            curve_crossings(b, a)
        return
    assert ab == {c.location for c in curve_crossings(b, a)}
    shared = {a0, a1} & {b0, b1}
    if not shared:
        assert bool(ab) == segments_properly_cross(a0, a1, b0, b1)


@settings(max_examples=300)
@given(st.lists(point, min_size=2, max_size=4, unique=True), st.lists(point, min_size=2, max_size=4, unique=True))
def test_sides_swap_when_direction_reverses(wa, wb):
    try:
        a, b = PolylineCurve(tuple(wa)), PolylineCurve(tuple(wb))
        if a.self_intersects() or b.self_intersects():
            return
        cs = curve_crossings(a, b)
    except (TangencyError, OverlapError, InvalidCurve):
        return
    for c in cs:
        try:
            f = crossing_side(a, b, c, forward=True)
        except DegenerateError:
            continue
        r = crossing_side(a, b, c, forward=False)
        assert (f.left, f.right) == (r.right, r.left)


def test_segment_intersection_touching_endpoints():
    hits = segment_intersection(P(0, 0), P(1, 0), P(1, 0), P(2, 5))
    assert len(hits) == 1 and hits[0][0] == P(1, 0)
