"""
Tolerance and multitolerance representations and their shadow representations.

The pipeline is interval model -> trapezoids -> shadow representation. The
definitional adjacency oracles (``tol_adjacent``, ``multitol_adjacent``) never
look at the geometry, so they can be used to check the construction.

Construction used for a vertex with interval ``[l, r]``:

* bounded tolerance vertex (``t <= r - l``): trapezoid ``(a, d, c, b) =
  (l, r - t, l + t, r)``, a parallelogram;
* bounded multitolerance vertex: ``(l, rt, lt, r)``;
* unbounded vertex: the degenerate trapezoid ``(l, l, r, r)``.

A bounded vertex becomes the segment from ``(a, D - (c - a))`` to
``(d, D - (b - d))`` and an unbounded vertex the point ``(a, D - (b - a))``,
where ``D = max b - min a``. In sheared coordinates ``(x, y - x)`` this puts
the lower trapezoid endpoints on the x-axis and ``D`` minus the upper
endpoints on the diagonal axis.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .geometry import (
    GeometryError,
    Point,
    Segment,
    as_rational,
    point_in_segment_reverse_shadow,
    point_in_segment_shadow,
    point_in_shadow,
    segment_meets_shadow,
)

__all__ = [
    "ValidationError",
    "ToleranceVertex",
    "MultitoleranceVertex",
    "ToleranceRepresentation",
    "MultitoleranceRepresentation",
    "Trapezoid",
    "ShadowRepresentation",
    "tol_adjacent",
    "multitol_adjacent",
    "trapezoids_from_tolerance",
    "trapezoids_from_multitolerance",
    "trapezoid_issues",
    "shadow_from_trapezoids",
    "tolerance_to_shadow",
    "multitolerance_to_shadow",
    "definitional_adjacency",
    "angle_cot_at",
    "trap_adjacent",
    "shadow_adjacent",
    "hovering",
    "neighbor_sets",
    "hovering_sets",
    "adjacency_matrix",
    "connected_components",
    "induced",
    "canonicalize",
    "is_canonical",
    "validate_shadow",
    "require_valid",
    "perturb_tolerance",
]


class ValidationError(ValueError):
    """Input violates a structural or general-position requirement."""


# --- definitional models ---------------------------------------------------


@dataclass(frozen=True)
class ToleranceVertex:
    id: str
    l: Fraction
    r: Fraction
    t: Fraction

    def __post_init__(self):
        object.__setattr__(self, "id", str(self.id))
        for name in ("l", "r", "t"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if self.l > self.r:
            raise ValidationError(f"vertex {self.id}: l > r")
        if self.t <= 0:
            raise ValidationError(f"vertex {self.id}: tolerance must be positive")

    @property
    def bounded(self) -> bool:
        return self.t <= self.r - self.l


@dataclass(frozen=True)
class MultitoleranceVertex:
    """``lt``/``rt`` are the tolerant points; both ``None`` marks an unbounded vertex."""

    id: str
    l: Fraction
    r: Fraction
    lt: Fraction | None = None
    rt: Fraction | None = None

    def __post_init__(self):
        object.__setattr__(self, "id", str(self.id))
        object.__setattr__(self, "l", as_rational(self.l))
        object.__setattr__(self, "r", as_rational(self.r))
        if (self.lt is None) != (self.rt is None):
            raise ValidationError(f"vertex {self.id}: give both tolerant points or neither")
        if self.lt is not None:
            object.__setattr__(self, "lt", as_rational(self.lt))
            object.__setattr__(self, "rt", as_rational(self.rt))
            if not (self.l <= self.lt <= self.r and self.l <= self.rt <= self.r):
                raise ValidationError(f"vertex {self.id}: tolerant points outside the interval")
        if self.l > self.r:
            raise ValidationError(f"vertex {self.id}: l > r")

    @property
    def bounded(self) -> bool:
        return self.lt is not None

    def tolerance_interval(self, lam) -> tuple[Fraction, Fraction]:
        lam = as_rational(lam)
        return (self.l + (self.rt - self.l) * lam, self.lt + (self.r - self.lt) * lam)


def _check_unique_ids(ids: Iterable[str]):
    seen = set()
    for i in ids:
        if i in seen:
            raise ValidationError(f"duplicate id {i!r}")
        seen.add(i)


@dataclass(frozen=True)
class ToleranceRepresentation:
    vertices: tuple[ToleranceVertex, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(sorted(self.vertices, key=lambda v: v.id)))
        _check_unique_ids(v.id for v in self.vertices)

    def __len__(self):
        return len(self.vertices)


@dataclass(frozen=True)
class MultitoleranceRepresentation:
    vertices: tuple[MultitoleranceVertex, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(sorted(self.vertices, key=lambda v: v.id)))
        _check_unique_ids(v.id for v in self.vertices)

    def __len__(self):
        return len(self.vertices)


def tol_adjacent(u: ToleranceVertex, v: ToleranceVertex) -> bool:
    overlap = max(Fraction(0), min(u.r, v.r) - max(u.l, v.l))
    return overlap >= min(u.t, v.t)


def _contained_for_some_lambda(u: MultitoleranceVertex, v: MultitoleranceVertex) -> bool:
    # some tolerance interval of u inside I_v: two linear inequalities in lam
    lo, hi = Fraction(0), Fraction(1)
    for c0, c1, bound, at_least in (
        (u.l, u.rt - u.l, v.l, True),
        (u.lt, u.r - u.lt, v.r, False),
    ):
        if not at_least:
            c0, c1, bound = -c0, -c1, -bound
        # c0 + c1*lam >= bound
        if c1 == 0:
            if c0 < bound:
                return False
        elif c1 > 0:
            lo = max(lo, (bound - c0) / c1)
        else:
            hi = min(hi, (bound - c0) / c1)
    return lo <= hi


def multitol_adjacent(u: MultitoleranceVertex, v: MultitoleranceVertex) -> bool:
    # the unbounded tolerance set {R} is never inside a finite interval
    if u.bounded and _contained_for_some_lambda(u, v):
        return True
    if v.bounded and _contained_for_some_lambda(v, u):
        return True
    return False


def definitional_adjacency(rep) -> dict[frozenset, bool]:
    """Adjacency of every vertex pair straight from the interval definitions."""
    test = tol_adjacent if isinstance(rep, ToleranceRepresentation) else multitol_adjacent
    vs = rep.vertices
    out = {}
    for a in range(len(vs)):
        for b in range(a + 1, len(vs)):
            out[frozenset((vs[a].id, vs[b].id))] = test(vs[a], vs[b])
    return out


# --- trapezoids --------------------------------------------------------------


@dataclass(frozen=True)
class Trapezoid:
    """Lower side ``[a, d]``, upper side ``[c, b]``."""

    id: str
    a: Fraction
    d: Fraction
    c: Fraction
    b: Fraction
    bounded: bool

    def __post_init__(self):
        for name in ("a", "d", "c", "b"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if self.a > self.d or self.c > self.b:
            raise ValidationError(f"trapezoid {self.id}: sides out of order")
        if not self.bounded and (self.a != self.d or self.c != self.b):
            raise ValidationError(f"trapezoid {self.id}: unbounded trapezoids are lines")
        if self.c < self.a or self.b < self.d:
            raise ValidationError(f"trapezoid {self.id}: angles must lie in (0, pi/2]")

    @property
    def cot1(self) -> Fraction:
        return self.c - self.a

    @property
    def cot2(self) -> Fraction:
        return self.b - self.d


def trapezoids_from_tolerance(rep: ToleranceRepresentation) -> list[Trapezoid]:
    out = []
    for v in rep.vertices:
        if v.bounded:
            out.append(Trapezoid(v.id, v.l, v.r - v.t, v.l + v.t, v.r, True))
        else:
            out.append(Trapezoid(v.id, v.l, v.l, v.r, v.r, False))
    return out


def trapezoids_from_multitolerance(rep: MultitoleranceRepresentation) -> list[Trapezoid]:
    out = []
    for v in rep.vertices:
        if v.bounded:
            out.append(Trapezoid(v.id, v.l, v.rt, v.lt, v.r, True))
        else:
            out.append(Trapezoid(v.id, v.l, v.l, v.r, v.r, False))
    return out


def trapezoid_issues(traps: Sequence[Trapezoid]) -> list[str]:
    """General-position problems: repeated lower or upper endpoints across vertices."""
    issues = []
    for side, names in (("lower", ("a", "d")), ("upper", ("c", "b"))):
        owner: dict[Fraction, str] = {}
        for T in traps:
            for value in {getattr(T, n) for n in names}:
                if value in owner and owner[value] != T.id:
                    issues.append(f"{side} endpoint {value} shared by {owner[value]} and {T.id}")
                owner.setdefault(value, T.id)
    return issues


def angle_cot_at(T: Trapezoid, x) -> Fraction:
    """Cotangent of the angle of the segment through lower point ``x`` (shared lambda)."""
    x = as_rational(x)
    if not (T.a <= x <= T.d):
        raise GeometryError(f"{x} outside the lower side [{T.a}, {T.d}]")
    if T.a == T.d:
        return T.c - T.a
    lam = (T.d - x) / (T.d - T.a)
    y = lam * T.c + (1 - lam) * T.b
    return y - x


def trap_adjacent(Tu: Trapezoid, Tv: Trapezoid) -> bool:
    """Adjacency of a bounded ``Tu`` and an unbounded ``Tv`` by the three-case rule."""
    if not Tu.bounded or Tv.bounded:
        raise GeometryError("trap_adjacent takes a bounded and an unbounded trapezoid")
    av = Tv.a
    if av <= Tu.a:
        return Tv.b >= Tu.c
    if av <= Tu.d:
        return Tv.b - Tv.a >= angle_cot_at(Tu, av)
    return False


# --- shadow representation ---------------------------------------------------


@dataclass(frozen=True)
class ShadowRepresentation:
    """Points (unbounded vertices) and segments (bounded vertices) with ids.

    Points are kept sorted by x and segments by the x-coordinate of their
    right endpoint; ids break ties.
    """

    points: tuple[tuple[str, Point], ...] = ()
    segments: tuple[tuple[str, Segment], ...] = ()
    delta: Fraction | None = None
    _index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        pts = tuple(sorted(((str(i), p) for i, p in self.points), key=lambda e: (e[1].x, e[1].y, e[0])))
        segs = tuple(sorted(((str(i), s) for i, s in self.segments), key=lambda e: (e[1].p2.x, e[1].p1.x, e[0])))
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "segments", segs)
        if self.delta is not None:
            object.__setattr__(self, "delta", as_rational(self.delta))
        _check_unique_ids([i for i, _ in pts] + [i for i, _ in segs])
        index = {i: p for i, p in pts}
        index.update({i: s for i, s in segs})
        object.__setattr__(self, "_index", index)

    @property
    def horizontal(self) -> bool:
        return all(s.horizontal for _, s in self.segments)

    @property
    def ids(self) -> list[str]:
        return sorted(self._index)

    @property
    def point_ids(self) -> list[str]:
        return [i for i, _ in self.points]

    @property
    def segment_ids(self) -> list[str]:
        return [i for i, _ in self.segments]

    def __len__(self):
        return len(self._index)

    def __contains__(self, eid) -> bool:
        return eid in self._index

    def element(self, eid: str):
        try:
            return self._index[eid]
        except KeyError:
            raise KeyError(f"unknown element id {eid!r}") from None

    def is_point(self, eid: str) -> bool:
        return isinstance(self.element(eid), Point)

    def elements(self):
        return [(i, self._index[i]) for i in self.ids]

    def with_elements(self, points=(), segments=()) -> "ShadowRepresentation":
        return ShadowRepresentation(self.points + tuple(points), self.segments + tuple(segments), self.delta)


def shadow_from_trapezoids(traps: Sequence[Trapezoid]) -> ShadowRepresentation:
    issues = trapezoid_issues(traps)
    if issues:
        raise ValidationError("; ".join(issues))
    if not traps:
        return ShadowRepresentation((), (), Fraction(0))
    delta = max(T.b for T in traps) - min(T.a for T in traps)
    points, segments = [], []
    for T in traps:
        if T.bounded:
            segments.append((T.id, Segment(Point(T.a, delta - T.cot1), Point(T.d, delta - T.cot2))))
        else:
            points.append((T.id, Point(T.a, delta - (T.b - T.a))))
    return ShadowRepresentation(tuple(points), tuple(segments), delta)


def tolerance_to_shadow(rep: ToleranceRepresentation) -> ShadowRepresentation:
    return shadow_from_trapezoids(trapezoids_from_tolerance(rep))


def multitolerance_to_shadow(rep: MultitoleranceRepresentation) -> ShadowRepresentation:
    return shadow_from_trapezoids(trapezoids_from_multitolerance(rep))


def _adjacent_elements(e1, e2) -> bool:
    p1, p2 = isinstance(e1, Point), isinstance(e2, Point)
    if p1 and p2:
        return False
    if p1:
        return point_in_segment_shadow(e2, e1)
    if p2:
        return point_in_segment_shadow(e1, e2)
    return segment_meets_shadow(e1, e2) or segment_meets_shadow(e2, e1)


def _hovers(point: Point, other) -> bool:
    # other hovers the unbounded vertex at ``point``
    if isinstance(other, Point):
        return point_in_shadow(point, other)
    return point_in_segment_reverse_shadow(other, point)


def shadow_adjacent(rep: ShadowRepresentation, x: str, y: str) -> bool:
    if x == y:
        raise ValueError("adjacency of a vertex with itself is undefined")
    return _adjacent_elements(rep.element(x), rep.element(y))


def hovering(rep: ShadowRepresentation, v: str, u: str) -> bool:
    """Is ``u`` a hovering vertex of the unbounded vertex ``v``?

    That is, would making ``v`` bounded create the new edge ``uv``: ``u`` meets
    the shadow of ``p_v`` and is not already a neighbour of ``v``.
    """
    pv = rep.element(v)
    if not isinstance(pv, Point):
        raise GeometryError(f"{v!r} is not an unbounded vertex")
    if u == v:
        raise ValueError("a vertex does not hover itself")
    eu = rep.element(u)
    return _hovers(pv, eu) and not _adjacent_elements(pv, eu)


def neighbor_sets(rep: ShadowRepresentation) -> dict[str, frozenset]:
    ids = rep.ids
    nb = {i: set() for i in ids}
    for a in range(len(ids)):
        ea = rep.element(ids[a])
        for b in range(a + 1, len(ids)):
            if _adjacent_elements(ea, rep.element(ids[b])):
                nb[ids[a]].add(ids[b])
                nb[ids[b]].add(ids[a])
    return {i: frozenset(s) for i, s in nb.items()}


def hovering_sets(rep: ShadowRepresentation) -> dict[str, frozenset]:
    """``H(p)`` for every point ``p``: non-neighbours meeting the shadow of ``p``."""
    out = {}
    for pid, p in rep.points:
        out[pid] = frozenset(
            u for u in rep.ids
            if u != pid and _hovers(p, e := rep.element(u)) and not _adjacent_elements(p, e)
        )
    return out


def adjacency_matrix(rep: ShadowRepresentation) -> tuple[list[str], list[list[bool]]]:
    ids = rep.ids
    nb = neighbor_sets(rep)
    return ids, [[j in nb[i] for j in ids] for i in ids]


def connected_components(rep: ShadowRepresentation, nb=None) -> list[list[str]]:
    nb = neighbor_sets(rep) if nb is None else nb
    seen, comps = set(), []
    for start in rep.ids:
        if start in seen:
            continue
        comp, queue = [], deque([start])
        seen.add(start)
        while queue:
            u = queue.popleft()
            comp.append(u)
            for w in sorted(nb[u]):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def induced(rep: ShadowRepresentation, ids: Iterable[str]) -> ShadowRepresentation:
    keep = set(ids)
    return ShadowRepresentation(
        tuple(e for e in rep.points if e[0] in keep),
        tuple(e for e in rep.segments if e[0] in keep),
        rep.delta,
    )


def is_canonical(rep: ShadowRepresentation) -> bool:
    return all(hs for hs in hovering_sets(rep).values())


def canonicalize(rep: ShadowRepresentation) -> ShadowRepresentation:
    """Turn every point with no hovering vertex into a one-point segment.

    Adjacency is unchanged: the new segment's neighbours are the segments
    whose shadow held the point plus whatever meets the point's own shadow,
    and the latter are already neighbours because the point had no
    hovering vertex.
    """
    while True:
        hs = hovering_sets(rep)
        lonely = {pid for pid, h in hs.items() if not h}
        if not lonely:
            return rep
        points = tuple(e for e in rep.points if e[0] not in lonely)
        new_segments = tuple((pid, Segment(p, p)) for pid, p in rep.points if pid in lonely)
        rep = ShadowRepresentation(points, rep.segments + new_segments, rep.delta)


def validate_shadow(rep: ShadowRepresentation, *, distinct_diagonals: bool = False) -> list[str]:
    """List general-position problems.

    Always checks that no two elements share an x-coordinate. With
    ``distinct_diagonals`` it also checks the diagonal coordinates ``y - x``
    (distinct upper trapezoid endpoints), which the solvers rely on.
    """
    issues = []
    checks = [("x", lambda p: p.x)]
    if distinct_diagonals:
        checks.append(("y-x", lambda p: p.d))
    for label, coord in checks:
        owner: dict[Fraction, str] = {}
        for eid, e in rep.elements():
            values = {coord(e)} if isinstance(e, Point) else {coord(e.p1), coord(e.p2)}
            for value in values:
                if value in owner and owner[value] != eid:
                    issues.append(f"{label}-coordinate {value} shared by {owner[value]} and {eid}")
                owner.setdefault(value, eid)
    return issues


def require_valid(rep: ShadowRepresentation, *, horizontal: bool = False, distinct_diagonals: bool = True):
    issues = validate_shadow(rep, distinct_diagonals=distinct_diagonals)
    if horizontal and not rep.horizontal:
        issues.append("representation has non-horizontal segments")
    if issues:
        raise ValidationError("; ".join(issues))


def perturb_tolerance(rep: ToleranceRepresentation) -> ToleranceRepresentation:
    """Break endpoint ties deterministically, keeping the graph unchanged.

    Every value is scaled by ``K = 2n + 1`` and each of the ``2n`` interval
    endpoints receives a distinct offset in ``{0, ..., 2n - 1}`` by sorted
    order. Raises ``ValidationError`` if this changed the graph or left ties.
    """
    n = len(rep.vertices)
    K = 2 * n + 1
    events = []
    for v in rep.vertices:
        events.append((v.l, 0, v.id))
        events.append((v.r, 1, v.id))
    events.sort()
    offset = {(kind, vid): rank for rank, (_, kind, vid) in enumerate(events)}
    out = ToleranceRepresentation(tuple(
        ToleranceVertex(v.id, v.l * K + offset[(0, v.id)], v.r * K + offset[(1, v.id)], v.t * K)
        for v in rep.vertices
    ))
    if definitional_adjacency(out) != definitional_adjacency(rep):
        raise ValidationError("perturbation changed the graph")
    issues = trapezoid_issues(trapezoids_from_tolerance(out))
    if issues:
        raise ValidationError("perturbation left ties: " + "; ".join(issues))
    return out
