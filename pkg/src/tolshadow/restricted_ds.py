"""
Bounded domination with a prescribed start-pair and end-pair.

For a left-crossing pair ``(j, j')`` and a right-crossing pair ``(i, i')``
the task is a smallest set ``Z`` of segments dominating the whole
representation in which ``l_j`` is the leftmost left endpoint, ``l_j'`` the
left endpoint with largest diagonal coordinate, ``r_i`` the rightmost right
endpoint and ``r_i'`` the right endpoint with smallest diagonal coordinate.
Equivalently every member of ``Z`` lies in ``A_l`` and in ``B_r`` where
``l = (l_j.x, l_j'.d)`` and ``r = (r_i.x, r_i'.d)`` in sheared coordinates.

The solver removes elements that cannot matter, adds a one-point segment
whose only neighbour is ``L_j`` (forcing ``j`` into the solution) and hands
the rest to the bounded solver with ``j'`` as diagonally-leftmost segment.

Region tests for "bad" elements are strict. A closed test would flag
elements that touch the boundary through ``l`` or ``r``, and those can be
dominated by the anchor segments themselves.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field

from .bounded_ds import BDTable, InternalError, dominates
from .geometry import GeometryError, Point, Segment
from .model import ShadowRepresentation, induced, neighbor_sets
from .solution import DomSolution

__all__ = [
    "RBDSInstance",
    "Classification",
    "classify_elements",
    "augment_Lj1",
    "solve_restricted",
    "RestrictedCache",
    "BAD_ELEMENT",
    "PAIR_INFEASIBLE",
]

BAD_ELEMENT = "bad-element"
PAIR_INFEASIBLE = "pair-infeasible"
LJ1_ID = "__Lj1"


def _ends(e):
    return (e, e) if isinstance(e, Point) else (e.p1, e.p2)


@dataclass(frozen=True)
class RBDSInstance:
    rep: ShadowRepresentation
    j: str
    j2: str
    i: str
    i2: str

    def __post_init__(self):
        for name in ("j", "j2", "i", "i2"):
            eid = getattr(self, name)
            if eid not in self.rep or self.rep.is_point(eid):
                raise GeometryError(f"{name}={eid!r} is not a segment of the representation")
        lj, lj2 = self.rep.element(self.j).p1, self.rep.element(self.j2).p1
        ri, ri2 = self.rep.element(self.i).p2, self.rep.element(self.i2).p2
        if not (lj.x <= lj2.x and lj.d <= lj2.d):
            raise GeometryError(f"({self.j}, {self.j2}) is not a left-crossing pair")
        if not (ri2.x <= ri.x and ri2.d <= ri.d):
            raise GeometryError(f"({self.i}, {self.i2}) is not a right-crossing pair")

    @property
    def l(self) -> Point:
        return Point.from_xd(self.rep.element(self.j).p1.x, self.rep.element(self.j2).p1.d)

    @property
    def r(self) -> Point:
        return Point.from_xd(self.rep.element(self.i).p2.x, self.rep.element(self.i2).p2.d)

    @property
    def anchors(self) -> frozenset:
        return frozenset((self.j, self.j2, self.i, self.i2))


@dataclass(frozen=True)
class Classification:
    bad_points: frozenset = field(default_factory=frozenset)
    irrelevant_points: frozenset = field(default_factory=frozenset)
    bad_segments: frozenset = field(default_factory=frozenset)
    irrelevant_segments: frozenset = field(default_factory=frozenset)

    @property
    def bad(self) -> frozenset:
        return self.bad_points | self.bad_segments

    @property
    def irrelevant(self) -> frozenset:
        return self.irrelevant_points | self.irrelevant_segments


def _in_A(p: Point, t: Point) -> bool:
    return p.x >= t.x and p.d <= t.d


def _in_B(p: Point, t: Point) -> bool:
    return p.x <= t.x and p.d >= t.d


def classify_elements(inst: RBDSInstance) -> Classification:
    """Sort non-anchor elements into bad and irrelevant ones.

    * bad point: strictly left of the diagonal through ``l`` or strictly
      right of the vertical through ``r``;
    * irrelevant point: in the shadow of ``l`` or of ``r``;
    * bad segment: inside the interior of ``B_l`` or of ``A_r``;
    * irrelevant segment: it is not inside ``A_l`` intersected with ``B_r``
      and it either avoids ``B_l`` and ``A_r`` or has an endpoint in one of
      them.

    The endpoint clause does not ask for a point outside both regions. When
    ``l == r`` a segment can pass through that single point while lying in
    ``B_l`` union ``A_r``; it is neither bad nor otherwise irrelevant, but
    ``L_j`` dominates it all the same.
    """
    if not inst.rep.horizontal:
        raise GeometryError("restricted domination needs a horizontal representation")
    l, r = inst.l, inst.r
    anchors = inst.anchors
    bp, ip, bs, is_ = set(), set(), set(), set()
    for eid, e in inst.rep.elements():
        if eid in anchors:
            continue
        if isinstance(e, Point):
            if e.d > l.d or e.x > r.x:
                bp.add(eid)
            elif (e.x <= l.x and e.d <= l.d) or (e.x <= r.x and e.d <= r.d):
                ip.add(eid)
            continue
        p, q = e.p1, e.p2
        if (q.x < l.x and q.d > l.d) or (p.x > r.x and p.d < r.d):
            bs.add(eid)
            continue
        # B_l meets a segment in a prefix and A_r in a suffix
        if not all(_in_A(t, l) and _in_B(t, r) for t in (p, q)):
            is_.add(eid)
    out = Classification(frozenset(bp), frozenset(ip), frozenset(bs), frozenset(is_))
    if out.bad & out.irrelevant:
        raise InternalError("an element was classified both bad and irrelevant")
    return out


def _remaining(inst: RBDSInstance, cls: Classification) -> list[str]:
    return [eid for eid in inst.rep.ids if eid not in cls.irrelevant]


def _lj1_segment(rep: ShadowRepresentation, j: str, j2: str) -> Segment:
    Lj = rep.element(j)
    others = [
        min(t.x for t in _ends(e)) for eid, e in rep.elements() if eid != j
    ]
    limit = min(others) if others else Lj.p1.x + 2
    if Lj.p2.x > Lj.p1.x:
        limit = min(limit, Lj.p2.x)
    x0 = (Lj.p1.x + limit) / 2
    d0 = rep.element(j2).p1.d + 1
    p = Point.from_xd(x0, d0)
    return Segment(p, p)


def augment_Lj1(inst: RBDSInstance) -> ShadowRepresentation:
    """Add a one-point segment whose only neighbour is ``L_j``.

    Requires an instance without bad or irrelevant elements.
    """
    cls = classify_elements(inst)
    if cls.bad or cls.irrelevant:
        raise GeometryError("remove bad and irrelevant elements before adding L_j1")
    return _augment(inst.rep, inst.j, inst.j2)


def _augment(rep: ShadowRepresentation, j: str, j2: str) -> ShadowRepresentation:
    new_id = LJ1_ID
    k = 1
    while new_id in rep:
        new_id = f"{LJ1_ID}_{k}"
        k += 1
    out = rep.with_elements(segments=((new_id, _lj1_segment(rep, j, j2)),))
    nb = neighbor_sets(out)
    if nb[new_id] != {j}:
        raise InternalError(f"L_j1 placement has neighbours {sorted(nb[new_id])}, expected only {j!r}")
    return out


class RestrictedCache:
    """Bounded-solver tables shared across restricted solves of one run."""

    def __init__(self):
        self.tables: dict = {}
        self.results: dict = {}


def solve_restricted(inst: RBDSInstance, cache: RestrictedCache | None = None) -> DomSolution:
    rep = inst.rep
    memo_key = (frozenset(rep.ids), inst.j, inst.j2, inst.i, inst.i2)
    if cache is not None and memo_key in cache.results:
        return cache.results[memo_key]
    result = _solve_restricted(inst, cache)
    if cache is not None:
        cache.results[memo_key] = result
    return result


def _solve_restricted(inst: RBDSInstance, cache: RestrictedCache | None) -> DomSolution:
    rep = inst.rep
    cls = classify_elements(inst)
    if cls.bad:
        return DomSolution.infeasible(BAD_ELEMENT)
    l, r = inst.l, inst.r
    seg_ok = lambda s: all(_in_A(t, l) and _in_B(t, r) for t in _ends(rep.element(s)))
    if not all(seg_ok(s) for s in inst.anchors):
        return DomSolution.infeasible(PAIR_INFEASIBLE)
    pool = [s for s in rep.segment_ids if seg_ok(s)]
    nb = neighbor_sets(rep)
    if not dominates(rep, pool, nb=nb):
        return DomSolution.infeasible(PAIR_INFEASIBLE)
    if not dominates(rep, inst.anchors, cls.irrelevant, nb=nb):
        raise InternalError("an irrelevant element is not dominated by the anchor segments")

    kept = _remaining(inst, cls)
    table_key = (frozenset(kept), inst.j, inst.j2)
    table = cache.tables.get(table_key) if cache is not None else None
    if table is None:
        sub = _augment(induced(rep, kept), inst.j, inst.j2)
        table = BDTable(sub)
        if cache is not None:
            cache.tables[table_key] = table
    A = table.arena
    lj1 = next(eid for eid in A.ids if eid.startswith(LJ1_ID) and eid not in rep)
    k1 = A.index[lj1]
    q, i, i2 = A.index[inst.j2], A.index[inst.i], A.index[inst.i2]
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 10000))
    try:
        mask = table.solve_ints(A.ld[k1], A.rx[i], A.rd[i2], q, i, i2)
    finally:
        sys.setrecursionlimit(old)
    if mask is None:
        raise InternalError("bounded solver found no set although the pool dominates")
    chosen = A.ids_of(mask)
    if lj1 in chosen or not inst.anchors <= set(chosen) or not all(seg_ok(s) for s in chosen):
        raise InternalError("restricted solution violates its start/end-pair structure")
    if not dominates(rep, chosen, nb=nb):
        raise InternalError("restricted solution is not dominating")
    return DomSolution.of(chosen)
