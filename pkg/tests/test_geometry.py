from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from tolshadow.geometry import (
    GeometryError,
    Point,
    Segment,
    as_rational,
    is_left_crossing_pair,
    is_right_crossing_pair,
    point_in_reverse_shadow,
    point_in_segment_reverse_shadow,
    point_in_segment_shadow,
    point_in_shadow,
    region_A,
    region_B,
    region_contains,
    region_R,
    reverse_shadow_membership,
    segment_meets_shadow,
    select_X,
    shadow_membership,
)

from conftest import seg_xd, xd

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=8)
points = st.builds(Point, rationals, rationals)


@st.composite
def segments(draw, horizontal=False):
    x1 = draw(rationals)
    x2 = x1 + draw(st.fractions(min_value=0, max_value=10, max_denominator=8))
    y1 = draw(rationals)
    if horizontal:
        return Segment(Point(x1, y1), Point(x2, y1))
    rise = draw(st.fractions(min_value=-10, max_value=x2 - x1, max_denominator=8))
    return Segment(Point(x1, y1), Point(x2, y1 + rise))


def H(x1, x2, y):
    return Segment.horizontal_at(x1, x2, y)


class TestPointShadow:
    def test_own_shadow(self):
        assert point_in_shadow(Point(0, 0), Point(0, 0))

    def test_slack(self):
        assert point_in_shadow(Point(0, 0), Point(-1, -2))

    def test_right_of_anchor(self):
        assert not point_in_shadow(Point(0, 0), Point(1, 0))

    def test_reverse(self):
        assert reverse_shadow_membership(Point(0, 0), Point(1, 2))
        assert reverse_shadow_membership(Point(0, 0), Point(0, 0))
        assert not reverse_shadow_membership(Point(0, 0), Point(-1, 0))

    def test_floats_rejected(self):
        with pytest.raises(TypeError):
            as_rational(0.5)
        assert as_rational("29/10") == F(29, 10)


class TestSegmentShadow:
    def test_horizontal_examples(self):
        x = Point(F(29, 10), 5)
        assert point_in_segment_shadow(H(0, 3, 7), x)
        assert point_in_segment_shadow(H(2, F(11, 2), F(11, 2)), x)
        assert not point_in_segment_shadow(H(0, 3, 7), Point(10, 0))

    def test_segment_meets_shadow(self):
        lu, lv = H(0, 3, 7), H(2, F(11, 2), F(11, 2))
        assert segment_meets_shadow(lv, lu)
        assert segment_meets_shadow(lu, lu)
        far = Segment(xd(10, 0), xd(12, -1))
        assert not segment_meets_shadow(far, lu)

    def test_degenerate_segment_acts_as_point(self):
        t = Point(3, 4)
        s = Segment(t, t)
        for x in (Point(3, 4), Point(2, 2), Point(4, 4), Point(0, 3)):
            assert point_in_segment_shadow(s, x) == point_in_shadow(t, x)
            assert point_in_segment_reverse_shadow(s, x) == point_in_reverse_shadow(t, x)

    def test_bad_segments_rejected(self):
        with pytest.raises(GeometryError):
            Segment(Point(1, 0), Point(0, 0))
        with pytest.raises(GeometryError):
            Segment(Point(0, 0), Point(1, 2))


class TestRegions:
    def test_A(self):
        A = region_A(Point(0, 0))
        assert region_contains(A, Point(3, 1))
        assert region_contains(A, Point(1, 1))
        # y - x = 2 > 0 puts (1, 3) left of the diagonal
        assert not region_contains(A, Point(1, 3))

    def test_B(self):
        B = region_B(Point(0, 0))
        # both endpoints have y - x < 0, so they lie right of the diagonal
        assert not region_contains(B, Segment(Point(-3, -4), Point(-2, -4)))
        assert region_contains(B, Segment(Point(-3, -1), Point(-2, 0)))

    def test_R_is_open_on_vertical(self):
        assert not region_contains(region_R(Point(0, 0), Point(5, 5)), Point(5, 5))
        assert region_contains(region_R(xd(0, 3), xd(5, 0)), xd(4, 1))

    def test_R_precondition(self):
        with pytest.raises(GeometryError):
            region_R(xd(0, 0), xd(5, 1))


class TestCrossingPairs:
    def test_self_pairs(self):
        s = H(0, 3, 7)
        assert is_left_crossing_pair(s, s)
        assert is_right_crossing_pair(s, s)

    def test_examples(self):
        a, b = H(0, 3, 7), H(2, F(11, 2), F(11, 2))
        assert not is_right_crossing_pair(a, b)
        assert not is_right_crossing_pair(b, a)


class TestSelectX:
    def setup_method(self):
        self.elements = [
            ("L1", Segment(Point(2, 8), Point(4, 8))),
            ("p1", xd(5, 5)),
            ("L2", seg_xd(8, 3, 12, 2)),
            ("L3", seg_xd(6, 11, 7, 11)),
            ("p2", xd(3, -1)),
        ]

    def test_window_pattern(self):
        assert select_X(xd(0, 10), xd(10, 0), self.elements) == {"L1", "p1"}

    def test_everything(self):
        assert select_X(xd(-100, 100), xd(100, -100), self.elements) == {e for e, _ in self.elements}

    def test_nothing_left_of_leftmost(self):
        assert select_X(xd(-100, 100), xd(2, -100), self.elements) == set()


@given(points, points)
def test_duality(t, x):
    assert point_in_shadow(t, x) == reverse_shadow_membership(x, t)
    assert shadow_membership(t, x) == point_in_shadow(t, x)


@given(points, points, points)
def test_transitivity(x, t, u):
    if point_in_shadow(t, x) and point_in_shadow(u, t):
        assert point_in_shadow(u, x)


@given(points)
def test_boundary_closed(t):
    assert point_in_shadow(t, Point(t.x, t.y - 1))
    assert point_in_shadow(t, xd(t.x - 1, t.d))


@given(segments(), points)
def test_segment_shadow_union_of_point_shadows(L, x):
    # any sampled anchor on L that covers x is a witness
    for k in range(65):
        lam = F(k, 64)
        t = Point(L.p1.x + lam * (L.p2.x - L.p1.x), L.p1.y + lam * (L.p2.y - L.p1.y))
        if point_in_shadow(t, x):
            assert point_in_segment_shadow(L, x)
            break
    assert point_in_segment_shadow(L, L.p1) and point_in_segment_shadow(L, L.p2)


@given(segments(horizontal=True), segments(horizontal=True))
def test_horizontal_meets_closed_form(lv, lu):
    # need x on lv, t on lu with 0 <= t.x - x.x <= h_u - h_v
    gap = lu.p1.y - lv.p1.y
    lo, hi = lu.p1.x - lv.p2.x, lu.p2.x - lv.p1.x
    expected = gap >= 0 and max(lo, 0) <= min(hi, gap)
    assert segment_meets_shadow(lv, lu) == expected


@given(segments(), segments())
def test_meets_shadow_sampled(lv, lu):
    for k in range(17):
        lam = F(k, 16)
        p = Point(lv.p1.x + lam * (lv.p2.x - lv.p1.x), lv.p1.y + lam * (lv.p2.y - lv.p1.y))
        if point_in_segment_shadow(lu, p):
            assert segment_meets_shadow(lv, lu)
            return


@given(points, points, st.lists(points, max_size=6))
def test_select_X_strict_on_vertical(a, b, pts):
    if b.d > a.d:
        return
    elements = [(f"p{k}", p) for k, p in enumerate(pts)] + [("b", b)]
    chosen = select_X(a, b, elements)
    assert "b" not in chosen
    assert all(dict(elements)[e].x < b.x for e in chosen)
