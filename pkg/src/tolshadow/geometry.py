"""
Exact planar primitives for shadow representations.

Every coordinate is a :class:`fractions.Fraction`. Most predicates are easiest
to read in the sheared coordinates ``(x, d)`` with ``d = y - x``: there the
shadow of a point ``t`` is the closed lower-left quadrant
``{x <= t.x, d <= t.d}``, the reverse shadow is the upper-right quadrant, and
vertical / diagonal lines become the two coordinate axes. Segments allowed in
a shadow representation (slope at most 1 and at least vertical) are exactly
the segments along which ``x`` does not decrease while ``d`` does not
increase.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Union

__all__ = [
    "GeometryError",
    "Point",
    "Segment",
    "RegionKind",
    "Region",
    "as_rational",
    "point_in_shadow",
    "point_in_reverse_shadow",
    "point_in_segment_shadow",
    "point_in_segment_reverse_shadow",
    "reverse_shadow_membership",
    "segment_meets_shadow",
    "region_contains",
    "is_left_crossing_pair",
    "is_right_crossing_pair",
    "vert_diag_point",
    "select_X",
]


class GeometryError(ValueError):
    """Raised when a geometric precondition is violated."""


def as_rational(value) -> Fraction:
    """Convert ``value`` to a Fraction without going through floating point.

    Accepts ints, Fractions and strings such as ``"7/2"`` or ``"-3"``.
    Floats are rejected because their binary expansion is rarely what the
    caller meant.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    raise TypeError(f"cannot interpret {value!r} as a rational")


@dataclass(frozen=True, order=True)
class Point:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", as_rational(self.x))
        object.__setattr__(self, "y", as_rational(self.y))

    @property
    def d(self) -> Fraction:
        """Diagonal coordinate ``y - x``."""
        return self.y - self.x

    @classmethod
    def from_xd(cls, x, d) -> "Point":
        x = as_rational(x)
        return cls(x, x + as_rational(d))

    def __repr__(self):
        return f"Point({self.x}, {self.y})"


@dataclass(frozen=True)
class Segment:
    """Closed segment from ``p1`` (smaller x, called ``l``) to ``p2`` (``r``).

    The slope bound ``y2 - y1 <= x2 - x1`` keeps the angle with the
    horizontal within ``[-pi/2, pi/4]``. ``p1 == p2`` is a valid degenerate
    segment.
    """

    p1: Point
    p2: Point

    def __post_init__(self):
        if self.p1.x > self.p2.x:
            raise GeometryError(f"segment endpoints out of order: {self.p1} then {self.p2}")
        if self.p2.y - self.p1.y > self.p2.x - self.p1.x:
            raise GeometryError(f"segment {self.p1}-{self.p2} is steeper than slope 1")

    @property
    def l(self) -> Point:
        return self.p1

    @property
    def r(self) -> Point:
        return self.p2

    @property
    def horizontal(self) -> bool:
        return self.p1.y == self.p2.y

    @property
    def degenerate(self) -> bool:
        return self.p1 == self.p2

    @classmethod
    def horizontal_at(cls, x1, x2, y) -> "Segment":
        return cls(Point(x1, y), Point(x2, y))

    def __repr__(self):
        return f"Segment({self.p1!r}, {self.p2!r})"


Element = Union[Point, Segment]


def _endpoints(e: Element) -> tuple[Point, Point]:
    if isinstance(e, Point):
        return e, e
    return e.p1, e.p2


# --- shadows ---------------------------------------------------------------


def point_in_shadow(t: Point, x: Point) -> bool:
    """True iff ``x`` lies in the closed shadow ``S_t``."""
    return x.x <= t.x and x.y - x.x <= t.y - t.x


def point_in_reverse_shadow(t: Point, x: Point) -> bool:
    """True iff ``x`` lies in the closed reverse shadow ``F_t``."""
    return x.x >= t.x and x.y - x.x >= t.y - t.x


def _unit_interval_feasible(constraints: Iterable[tuple[Fraction, Fraction]]) -> bool:
    """Is there ``lam`` in [0, 1] with ``c0 + c1*lam >= 0`` for every pair?"""
    lo, hi = Fraction(0), Fraction(1)
    for c0, c1 in constraints:
        if c1 == 0:
            if c0 < 0:
                return False
        elif c1 > 0:
            lo = max(lo, -c0 / c1)
        else:
            hi = min(hi, -c0 / c1)
        if lo > hi:
            return False
    return True


def point_in_segment_shadow(L: Segment, x: Point) -> bool:
    """True iff some anchor ``t`` on ``L`` has ``x`` in its shadow.

    Along ``t(lam) = p1 + lam*(p2 - p1)`` both conditions ``t.x >= x.x`` and
    ``t.d >= x.d`` are linear in ``lam``.
    """
    p1, p2 = L.p1, L.p2
    dx, dd = p2.x - p1.x, p2.d - p1.d
    return _unit_interval_feasible([(p1.x - x.x, dx), (p1.d - x.d, dd)])


def point_in_segment_reverse_shadow(L: Segment, x: Point) -> bool:
    """True iff ``x`` lies in ``F_L``, the union of reverse shadows along ``L``."""
    p1, p2 = L.p1, L.p2
    dx, dd = p2.x - p1.x, p2.d - p1.d
    return _unit_interval_feasible([(x.x - p1.x, -dx), (x.d - p1.d, -dd)])


def reverse_shadow_membership(anchor: Element, x: Point) -> bool:
    if isinstance(anchor, Point):
        return point_in_reverse_shadow(anchor, x)
    return point_in_segment_reverse_shadow(anchor, x)


def shadow_membership(anchor: Element, x: Point) -> bool:
    if isinstance(anchor, Point):
        return point_in_shadow(anchor, x)
    return point_in_segment_shadow(anchor, x)


def segment_meets_shadow(Lv: Segment, Lu: Segment) -> bool:
    """True iff some point of ``Lv`` lies in the shadow of ``Lu``.

    The pairs ``(lam, mu)`` with ``Lv(lam)`` dominated by ``Lu(mu)`` form a
    convex polygon inside the unit square cut out by two half-planes. When it
    is non-empty it has a vertex on the boundary of the square, so it is
    enough to test the four cases where one parameter is 0 or 1.
    """
    return (
        point_in_segment_shadow(Lu, Lv.p1)
        or point_in_segment_shadow(Lu, Lv.p2)
        or point_in_segment_reverse_shadow(Lv, Lu.p1)
        or point_in_segment_reverse_shadow(Lv, Lu.p2)
    )


# --- lines and regions -----------------------------------------------------


def vert_diag_point(vert: Point, diag: Point) -> Point:
    """Intersection of the vertical line through ``vert`` and the diagonal through ``diag``."""
    return Point.from_xd(vert.x, diag.d)


class RegionKind(Enum):
    SHADOW = "shadow"
    REVERSE_SHADOW = "reverse_shadow"
    A = "A"
    B = "B"
    LEFT_OF_VERT = "left_of_vert"
    RIGHT_OF_VERT = "right_of_vert"
    LEFT_OF_DIAG = "left_of_diag"
    RIGHT_OF_DIAG = "right_of_diag"
    R = "R"


@dataclass(frozen=True)
class Region:
    """A convex region anchored at one point, or ``R(a, b)`` anchored at two."""

    kind: RegionKind
    anchor: Point
    second: Point | None = None

    def __post_init__(self):
        if (self.kind is RegionKind.R) != (self.second is not None):
            raise GeometryError("only R(a, b) takes a second anchor")

    def contains_point(self, p: Point) -> bool:
        t, k = self.anchor, self.kind
        if k is RegionKind.SHADOW:
            return p.x <= t.x and p.d <= t.d
        if k is RegionKind.REVERSE_SHADOW:
            return p.x >= t.x and p.d >= t.d
        if k is RegionKind.A:
            return p.x >= t.x and p.d <= t.d
        if k is RegionKind.B:
            return p.x <= t.x and p.d >= t.d
        if k is RegionKind.LEFT_OF_VERT:
            return p.x <= t.x
        if k is RegionKind.RIGHT_OF_VERT:
            return p.x >= t.x
        if k is RegionKind.LEFT_OF_DIAG:
            return p.d >= t.d
        if k is RegionKind.RIGHT_OF_DIAG:
            return p.d <= t.d
        a, b = t, self.second
        return p.x < b.x and b.d <= p.d <= a.d

    def contains(self, e: Element) -> bool:
        # every region here is convex, so endpoints decide containment
        p, q = _endpoints(e)
        return self.contains_point(p) and self.contains_point(q)


def region_contains(r: Region, x: Element) -> bool:
    return r.contains(x)


def shadow(t: Point) -> Region:
    return Region(RegionKind.SHADOW, t)


def reverse_shadow(t: Point) -> Region:
    return Region(RegionKind.REVERSE_SHADOW, t)


def region_A(t: Point) -> Region:
    return Region(RegionKind.A, t)


def region_B(t: Point) -> Region:
    return Region(RegionKind.B, t)


def region_R(a: Point, b: Point) -> Region:
    """``(B_b minus the vertical line through b)`` intersected with the right side of a's diagonal."""
    if b.d > a.d:
        raise GeometryError("R(a, b) needs b on or right of the diagonal through a")
    return Region(RegionKind.R, a, b)


# --- crossing pairs and X(a, b) ---------------------------------------------


def is_left_crossing_pair(Lj: Segment, Lj2: Segment) -> bool:
    """``l_j`` lies in the shadow of ``l_j'``."""
    return point_in_shadow(Lj2.p1, Lj.p1)


def is_right_crossing_pair(Li: Segment, Li2: Segment) -> bool:
    """``r_i'`` lies in the shadow of ``r_i``."""
    return point_in_shadow(Li.p2, Li2.p2)


def select_X(a: Point, b: Point, elements) -> set:
    """Ids of the elements lying entirely inside ``R(a, b)``.

    ``elements`` is an iterable of ``(id, Point | Segment)`` pairs.
    """
    region = region_R(a, b)
    return {eid for eid, e in elements if region.contains(e)}
