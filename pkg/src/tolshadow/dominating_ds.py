"""
Minimum dominating sets of tolerance graphs, with points allowed.

The recursion works on a canonical horizontal representation augmented by
two isolated one-point segments (far left-up and far right-down) and one
isolated point to the right of everything. Points are indexed in x-order.

* ``P*`` holds the points lying in no other point's shadow. Some minimum
  dominating set uses only points of ``P*`` and never contains a point
  together with one of its neighbours or hovering elements ("normalized").
* ``G_j`` is the set of elements inside ``B_{p_j}`` strictly left of
  ``p_j``; ``G(q, j)`` the members of ``G_j`` other than ``p_q`` inside
  ``A_{p_q}``.
* ``D(j, i, i')`` is a smallest normalized dominating set of ``G_j`` whose
  end-pair is ``(i, i')``. It is the better of a pure-segment solution from
  the bounded solver on ``G_j`` and, for the last chosen point ``p_q'``, the
  union of ``D(q, z, z')``, the ``P*`` points from ``p_q`` to ``p_q'`` and a
  restricted solution on ``G(q', j)``.

Every candidate is verified (inside ``G_j``, correct end-pair, normalized,
dominating) before it is accepted.
"""

from __future__ import annotations

import sys
from collections import Counter
from dataclasses import dataclass

from ._arena import Arena, better, bits
from .bounded_ds import (
    BDTable,
    InternalError,
    augment_with_dummies,
    dominates,
    solve_bounded_ds,
    _fresh_id,
)
from .geometry import GeometryError, Point
from .model import (
    ShadowRepresentation,
    canonicalize,
    connected_components,
    hovering_sets,
    induced,
    neighbor_sets,
    require_valid,
)
from .restricted_ds import RBDSInstance, RestrictedCache, solve_restricted
from .solution import DomSolution

__all__ = [
    "compute_p_star",
    "is_normalized",
    "DKey",
    "DSolver",
    "augment_for_domination",
    "d_solve",
    "solve_min_dominating_set",
    "CANONICALIZED_NOTICE",
]

DUMMY_POINT = "__dummy_point"
CANONICALIZED_NOTICE = "input was not canonical; points without hovering vertices were made bounded"


def compute_p_star(rep: ShadowRepresentation) -> list[str]:
    """Points in no other point's shadow, in increasing x."""
    pts = rep.points
    out = []
    for pid, p in pts:
        hovered = any(
            oid != pid and p.x <= o.x and p.d <= o.d for oid, o in pts
        )
        if not hovered:
            out.append(pid)
    return out


def is_normalized(rep: ShadowRepresentation, D, *, nb=None, hs=None, pstar=None) -> bool:
    """Chosen points lie in ``P*`` and share no neighbour or hovering element with ``D``."""
    D = set(D)
    nb = neighbor_sets(rep) if nb is None else nb
    hs = hovering_sets(rep) if hs is None else hs
    pstar = set(compute_p_star(rep) if pstar is None else pstar)
    for v in D:
        if rep.is_point(v):
            if v not in pstar or (nb[v] | hs[v]) & D:
                return False
    return True


def augment_for_domination(rep: ShadowRepresentation):
    """Dummy segments as for the bounded solver plus a dummy point right of all."""
    aug, left, right = augment_with_dummies(rep)
    right_pt = aug.element(right).p1
    pid = _fresh_id(aug, DUMMY_POINT)
    aug = aug.with_elements(points=((pid, Point.from_xd(right_pt.x + 1, right_pt.d - 1)),))
    return aug, left, right, pid


class DSolver:
    """Memoized ``D(j, i, i')`` over one augmented canonical representation."""

    def __init__(self, aug: ShadowRepresentation, left: str, right: str, dummy_point: str):
        self.rep = aug
        self.left, self.right, self.dummy_point = left, right, dummy_point
        self.A = A = Arena(aug)
        self.stats = Counter()
        self.memo: dict = {}
        self.rd_cache = RestrictedCache()
        self._subreps: dict = {}
        self._bd_tables: dict = {}
        self.points = sorted((k for k in range(A.n) if A.is_point[k]), key=lambda k: A.lx[k])
        self.pos = {k: t for t, k in enumerate(self.points)}
        self.pstar = [
            p for p in self.points
            if not any(o != p and A.lx[p] <= A.lx[o] and A.ld[p] <= A.ld[o] for o in self.points)
        ]
        self.pstar_mask = sum(1 << p for p in self.pstar)
        self.N = [A.nb[k] & ~(1 << k) for k in range(A.n)]
        self._G = {p: A.select(lambda k, p=p: A.rx[k] < A.lx[p] and A.rd[k] >= A.ld[p]) for p in self.points}
        self._Aq = {p: A.in_A(A.lx[p], A.ld[p]) for p in self.points}

    # --- region helpers ------------------------------------------------------

    def G(self, j: int) -> int:
        return self._G[j]

    def Gqj(self, q: int, j: int) -> int:
        # p_q sits in its own A region but is dominated by itself
        return self._G[j] & self._Aq[q] & ~(1 << q)

    def subrep(self, mask: int) -> ShadowRepresentation:
        rep = self._subreps.get(mask)
        if rep is None:
            rep = self._subreps[mask] = induced(self.rep, self.A.ids_of(mask))
        return rep

    def normalized(self, Z: int) -> bool:
        pts = Z & self.A.point_mask
        if pts & ~self.pstar_mask:
            return False
        return all(not ((self.N[p] | self.A.hov[p]) & Z) for p in bits(pts))

    def _valid(self, cand: int, Gj: int, i: int, i2: int) -> bool:
        A = self.A
        if cand & ~Gj or not (cand >> i) & 1 or not (cand >> i2) & 1:
            return False
        if cand & ~A.in_B(A.rx[i], A.rd[i2]):
            return False
        return self.normalized(cand) and A.dominates(cand, Gj)

    # --- recursion -------------------------------------------------------------

    def solve(self, j: int, i: int, i2: int):
        key = (j, i, i2)
        if key in self.memo:
            value = self.memo[key]
            if value is _ACTIVE:
                raise InternalError(f"D recursion re-entered {key}")
            return value
        self.memo[key] = _ACTIVE
        value = self._compute(j, i, i2)
        self.memo[key] = value
        return value

    def _compute(self, j: int, i: int, i2: int):
        A = self.A
        lx, ld, rx, rd = A.lx, A.ld, A.rx, A.rd
        Gj = self.G(j)
        segs = Gj & A.seg_mask
        if not (segs >> i) & 1 or not (segs >> i2) & 1:
            raise GeometryError("end-pair segments must lie in G_j")
        if not (rx[i2] <= rx[i] and rd[i2] <= rd[i]):
            raise GeometryError("end-pair is not right-crossing")
        if not A.dominates(Gj & A.in_B(rx[i], rd[i2]), Gj):
            return None
        tail = A.window(rd[i2], lx[j], ld[j], Gj)
        if not A.dominates((1 << i) | (1 << i2), tail):
            return None
        if any(lx[p] >= rx[i] for p in bits(Gj & A.point_mask)):
            return None
        self.stats["entries"] += 1
        best = None

        def offer(cand):
            nonlocal best
            if cand is None:
                return
            if not self._valid(cand, Gj, i, i2):
                self.stats["rejected"] += 1
                return
            if better(cand, best):
                best = cand

        offer(self._segment_branch(Gj, i, i2))

        for q2 in self.pstar:
            if lx[q2] >= lx[j]:
                break
            if (self.N[q2] | A.hov[q2]) & ((1 << i) | (1 << i2)):
                continue
            Gq2j = self.Gqj(q2, j)
            if not (Gq2j >> i) & 1 or not (Gq2j >> i2) & 1:
                continue
            w_segs = list(bits(Gq2j & A.seg_mask))
            w_pairs = [(w, w2) for w in w_segs for w2 in w_segs if lx[w] <= lx[w2] and ld[w] <= ld[w2]]
            if not w_pairs:
                continue
            z_segs = list(bits(self.G(q2) & A.seg_mask))
            for z in z_segs:
                for z2 in z_segs:
                    if not (rx[z2] <= rx[z] and rd[z2] <= rd[z]):
                        continue
                    q = next(
                        (p for p in self.pstar if lx[p] <= lx[q2] and lx[p] >= rx[z] and ld[p] <= rd[z2]),
                        None,
                    )
                    if q is None:
                        continue
                    Gq = self.G(q)
                    if not (Gq >> z) & 1 or not (Gq >> z2) & 1:
                        continue
                    D2 = sum(1 << p for p in self.pstar if lx[q] <= lx[p] <= lx[q2])
                    if not A.dominates(D2, self.Gqj(q, q2)):
                        continue
                    covered = 0
                    for p in bits(D2):
                        covered |= self.N[p]
                    loose = (A.hov[q] | A.hov[q2]) & Gj & ~covered
                    base_zz = A.nb[z] | A.nb[z2]
                    D1 = _UNSET
                    for w, w2 in w_pairs:
                        if loose & ~(base_zz | A.nb[w] | A.nb[w2]):
                            continue
                        if D1 is _UNSET:
                            D1 = self.solve(q, z, z2)
                        if D1 is None:
                            break
                        D3 = self._restricted(Gq2j, w, w2, i, i2)
                        if D3 is None:
                            continue
                        offer(D1 | D2 | D3)
        return best

    def _segment_branch(self, Gj: int, i: int, i2: int):
        table = self._bd_tables.get(Gj)
        if table is None:
            table = self._bd_tables[Gj] = BDTable(self.subrep(Gj))
        B = table.arena
        A = self.A
        dl = B.index[self.left]
        si, si2 = B.index[A.ids[i]], B.index[A.ids[i2]]
        mask = table.solve_ints(B.ld[dl], B.rx[si], B.rd[si2], dl, si, si2)
        if mask is None:
            return None
        return A.mask_of(B.ids_of(mask))

    def _restricted(self, sub: int, w: int, w2: int, i: int, i2: int):
        A = self.A
        inst = RBDSInstance(self.subrep(sub), A.ids[w], A.ids[w2], A.ids[i], A.ids[i2])
        sol = solve_restricted(inst, self.rd_cache)
        return None if not sol.feasible else A.mask_of(sol.ids)

    def solve_top(self):
        A = self.A
        dp, dr = A.index[self.dummy_point], A.index[self.right]
        return self.solve(dp, dr, dr)


_ACTIVE = object()
_UNSET = object()


@dataclass(frozen=True)
class DKey:
    """Point ``j`` of ``P*`` and a right-crossing pair ``(i, i2)`` of ``G_j``."""

    j: str
    i: str
    i2: str


def d_solve(key: DKey, solver: DSolver) -> DomSolution:
    """``D(j, i, i2)`` on the solver's augmented representation."""
    A = solver.A
    mask = solver.solve(A.index[key.j], A.index[key.i], A.index[key.i2])
    if mask is None:
        return DomSolution.infeasible("no dominating set of G_j with this end-pair")
    return DomSolution.of(A.ids_of(mask))


def _solve_component(rep: ShadowRepresentation) -> list[str]:
    if len(rep) == 1:
        return rep.ids
    if not rep.points:
        sol = solve_bounded_ds(rep)
        if not sol.feasible:
            raise InternalError("a connected component without points is dominated by its segments")
        return sorted(sol.ids)
    aug, left, right, pid = augment_for_domination(rep)
    solver = DSolver(aug, left, right, pid)
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 10000))
    try:
        mask = solver.solve_top()
    finally:
        sys.setrecursionlimit(old)
    if mask is None:
        raise InternalError("top-level D entry is infeasible")
    chosen = [eid for eid in solver.A.ids_of(mask) if eid not in (left, right, pid)]
    return chosen


def solve_min_dominating_set(rep: ShadowRepresentation) -> DomSolution:
    """Minimum dominating set of the tolerance graph given by ``rep``.

    Non-canonical input is canonicalized first (recorded in ``notes``).
    Disconnected graphs are solved one component at a time; on connected
    input the result is also normalized.
    """
    if not rep.horizontal:
        raise GeometryError("minimum dominating set is implemented for horizontal (tolerance) representations")
    require_valid(rep)
    notes = []
    if not rep.segments:
        return DomSolution.of(rep.point_ids, notes=("no bounded vertices: the graph has no edges",))
    if not rep.points:
        sol = solve_bounded_ds(rep)
        return DomSolution.of(sol.ids, notes=("no unbounded vertices: solved as bounded domination",))
    work = canonicalize(rep)
    if work != rep:
        notes.append(CANONICALIZED_NOTICE)
    nb = neighbor_sets(work)
    comps = connected_components(work, nb)
    if len(comps) > 1:
        notes.append(f"graph has {len(comps)} connected components; solved separately")
    chosen: list[str] = []
    for comp in comps:
        chosen.extend(_solve_component(induced(work, comp)))
    if not dominates(rep, chosen):
        raise InternalError("solver returned a non-dominating set")
    if len(comps) == 1 and not is_normalized(work, chosen, nb=nb):
        raise InternalError("solver returned a set that is not normalized")
    return DomSolution.of(chosen, notes=notes)
