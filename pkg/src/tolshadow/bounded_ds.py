"""
Minimum dominating sets that use bounded vertices only.

Given a horizontal shadow representation ``(P, L)`` the task is a smallest
``Z`` within ``L`` dominating every element of ``P`` and ``L``. The solver is
a memoized recursion over windows ``R(a, b) = {x < b.x, b.d <= y - x <= a.d}``
of the plane (``d`` is the diagonal coordinate ``y - x``):

``BD(a, b, q, i, i')`` is the smallest set of segments that dominates every
element inside the window, whose segment with rightmost right endpoint is
``i``, whose segment with lowest right-endpoint diagonal is ``i'`` and whose
segment with highest left-endpoint diagonal is ``q``.

Three recursions shrink a window: moving ``b`` up to the diagonal of
``l_i``; removing ``i`` and recursing on the next end-pair ``(j, j')``; and
splitting the window at a grid point ``c`` (or ``c'`` together with a new
diagonally-leftmost segment ``q'``). All families are evaluated and every
candidate is re-verified before it can win, so a returned set is always a
valid dominating set of its window.
"""

from __future__ import annotations

import sys
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from ._arena import Arena, better, bits
from .geometry import GeometryError, Point, Segment
from .model import ShadowRepresentation, neighbor_sets, require_valid
from .solution import DomSolution

__all__ = [
    "InternalError",
    "BDKey",
    "BDTable",
    "DomSolution",
    "augment_dummies",
    "bd_init",
    "bd_solve",
    "solve_bounded_ds",
    "dominates",
    "NOT_DOMINATING",
]

NOT_DOMINATING = "L does not dominate (P,L)"
LEFT_DUMMY = "__dummy_left"
RIGHT_DUMMY = "__dummy_right"

_SKIP = object()


class InternalError(RuntimeError):
    """An invariant of the solver was violated. Indicates a bug."""


def _fresh_id(rep: ShadowRepresentation, base: str) -> str:
    if base not in rep:
        return base
    k = 1
    while f"{base}_{k}" in rep:
        k += 1
    return f"{base}_{k}"


def _extent(rep: ShadowRepresentation):
    xs, ds = [], []
    for _, e in rep.elements():
        for p in ((e,) if isinstance(e, Point) else (e.p1, e.p2)):
            xs.append(p.x)
            ds.append(p.d)
    if not xs:
        return Fraction(0), Fraction(0), Fraction(0), Fraction(0)
    return min(xs), max(xs), min(ds), max(ds)


def augment_with_dummies(rep: ShadowRepresentation) -> tuple[ShadowRepresentation, str, str]:
    """Add two isolated one-point segments, far left-up and far right-down.

    Every original element lies in ``A`` of the left dummy and in ``B`` of the
    right dummy. Returns the new representation and the two dummy ids.
    """
    xmin, xmax, dmin, dmax = _extent(rep)
    left = _fresh_id(rep, LEFT_DUMMY)
    right = _fresh_id(rep, RIGHT_DUMMY)
    pl = Point.from_xd(xmin - 1, dmax + 1)
    pr = Point.from_xd(xmax + 1, dmin - 1)
    out = rep.with_elements(segments=((left, Segment(pl, pl)), (right, Segment(pr, pr))))
    return out, left, right


def augment_dummies(rep: ShadowRepresentation) -> ShadowRepresentation:
    return augment_with_dummies(rep)[0]


def dominates(rep: ShadowRepresentation, Z, targets=None, nb=None) -> bool:
    """Does ``Z`` dominate ``targets`` (default: every element)?"""
    nb = neighbor_sets(rep) if nb is None else nb
    Z = set(Z)
    targets = rep.ids if targets is None else targets
    return all(t in Z or nb[t] & Z for t in targets)


@dataclass(frozen=True)
class BDKey:
    """Window ``R(a, b)`` plus diagonally-leftmost segment ``q`` and end-pair ``(i, i2)``."""

    a: Point
    b: Point
    q: str
    i: str
    i2: str


class BDTable:
    """Memo table of ``BD`` values for one horizontal representation.

    Keys are normalized to the tightest grid window holding the same element
    set, so windows selecting the same elements share an entry.
    """

    def __init__(self, rep: ShadowRepresentation, *, arena: Arena | None = None):
        self.rep = rep
        self.arena = Arena(rep) if arena is None else arena
        self.memo: dict[tuple, int | None] = {}
        self.stats = Counter()
        self._active: set = set()
        self._windows: dict = {}
        self._cands: dict = {}

    # --- public, id-based interface ----------------------------------------

    def _key_ints(self, key: BDKey):
        A = self.arena
        for name in ("q", "i", "i2"):
            eid = getattr(key, name)
            if eid not in A.index or A.is_point[A.index[eid]]:
                raise GeometryError(f"{name}={eid!r} is not a segment of this representation")
        ad, bx, bd = A.to_int(key.a.d), A.to_int(key.b.x), A.to_int(key.b.d)
        if ad not in A.ds or bd not in A.ds or bx not in A.xs:
            raise GeometryError("window corners must lie on the endpoint grid")
        q, i, i2 = A.index[key.q], A.index[key.i], A.index[key.i2]
        if not self.admissible(ad, bx, bd, q, i, i2):
            raise GeometryError(f"inadmissible key {key}")
        return ad, bx, bd, q, i, i2

    def admissible(self, ad, bx, bd, q, i, i2) -> bool:
        A = self.arena
        return (
            bd <= ad
            and bx <= A.rx[i]
            and A.rx[i2] <= A.rx[i] and A.rd[i2] <= A.rd[i]
            and A.rx[q] <= A.rx[i] and A.rd[q] >= A.rd[i2]
            and A.ld[i] <= A.ld[q] and A.ld[i2] <= A.ld[q]
        )

    def _to_solution(self, mask) -> DomSolution:
        if mask is None:
            return DomSolution.infeasible("window not dominated by the admissible segments")
        return DomSolution.of(self.arena.ids_of(mask))

    def init(self, key: BDKey) -> tuple[DomSolution, bool]:
        """Initial value of an entry and whether it is already final.

        Final when the admissible segments cannot dominate the window (``⊥``)
        or when ``{q, i, i2}`` alone dominates it. Otherwise the value is the
        set of all admissible segments, an upper bound.
        """
        ad, bx, bd, q, i, i2 = self._key_ints(key)
        A = self.arena
        X = self._window(ad, bx, bd)
        base = (1 << q) | (1 << i) | (1 << i2)
        C = self._cand(q, i, i2)
        if not A.dominates(C, X):
            return self._to_solution(None), True
        if not X or A.in_seg_shadow(i, bx, ad) or A.dominates(base, X):
            return self._to_solution(base), True
        return self._to_solution(C), False

    def solve(self, key: BDKey) -> DomSolution:
        return self._to_solution(self.solve_ints(*self._key_ints(key)))

    def entries(self):
        """Yield ``(BDKey, DomSolution)`` for every memoized entry."""
        A = self.arena
        anchor_for_d = {}
        for k in bits(A.seg_mask):
            anchor_for_d.setdefault(A.ld[k], (A.lx[k], A.ld[k]))
            anchor_for_d.setdefault(A.rd[k], (A.rx[k], A.rd[k]))
        for (ad, bx, bd, q, i, i2), mask in self.memo.items():
            ax, _ = anchor_for_d[ad]
            key = BDKey(
                Point.from_xd(A.to_fraction(ax), A.to_fraction(ad)),
                Point.from_xd(A.to_fraction(bx), A.to_fraction(bd)),
                A.ids[q], A.ids[i], A.ids[i2],
            )
            yield key, self._to_solution(mask)

    # --- integer engine -----------------------------------------------------

    def _window(self, ad, bx, bd) -> int:
        w = (ad, bx, bd)
        X = self._windows.get(w)
        if X is None:
            X = self._windows[w] = self.arena.window(ad, bx, bd)
        return X

    def _cand(self, q, i, i2) -> int:
        k = (q, i, i2)
        C = self._cands.get(k)
        if C is None:
            A = self.arena
            lq, ri, rdi2 = A.ld[q], A.rx[i], A.rd[i2]
            C = self._cands[k] = A.select(
                lambda s: A.ld[s] <= lq and A.rx[s] <= ri and A.rd[s] >= rdi2, A.seg_mask
            )
        return C

    def _normalize(self, X, q, i, i2):
        A = self.arena
        ks = list(bits(X))
        ad = A.grid_d_at_least(max(A.ld[k] for k in ks))
        bd = A.grid_d_at_most(min(A.rd[k] for k in ks))
        bx = A.grid_x_above(max(A.rx[k] for k in ks))
        if ad is None or bd is None or bx is None:
            raise InternalError("window corner left the grid")
        return (ad, bx, bd, q, i, i2)

    def solve_ints(self, ad, bx, bd, q, i, i2):
        X = self._window(ad, bx, bd)
        if not X:
            return (1 << q) | (1 << i) | (1 << i2)
        key = self._normalize(X, q, i, i2)
        if key in self.memo:
            return self.memo[key]
        if key in self._active:
            raise InternalError(f"recursion re-entered key {key}")
        self._active.add(key)
        try:
            value = self._compute(key, X)
        finally:
            self._active.discard(key)
        self.memo[key] = value
        return value

    def _sub(self, current, ad, bx, bd, q, i, i2):
        X = self._window(ad, bx, bd)
        if X and self._normalize(X, q, i, i2) == current:
            self.stats["self_loops"] += 1
            return _SKIP
        return self.solve_ints(ad, bx, bd, q, i, i2)

    def _compute(self, key, X):
        A = self.arena
        ad, bx, bd, q, i, i2 = key
        lx, ld, rx, rd = A.lx, A.ld, A.rx, A.rd
        base = (1 << q) | (1 << i) | (1 << i2)
        C = self._cand(q, i, i2)
        if not A.dominates(C, X):
            return None
        if A.dominates(base, X):
            return base
        self.stats["entries"] += 1
        floor = base.bit_count() + 1
        best = C

        def offer(cand):
            nonlocal best
            if cand is None or cand is _SKIP:
                return
            if cand & ~C or base & ~cand or not A.dominates(cand, X):
                self.stats["rejected"] += 1
                return
            if better(cand, best):
                best = cand

        def done():
            return best.bit_count() <= floor

        # move b up to the diagonal through l_i
        if bx <= lx[i] and bd <= ld[i] and ld[i] != bd:
            offer(self._sub(key, ad, bx, ld[i], q, i, i2))
            if done():
                return best

        # drop i and continue with the next end-pair (j, j2)
        Cm = C & ~(1 << i)
        qi = (1 << q) | (1 << i)
        j2_pool = Cm if i == i2 else (1 << i2)
        for j in bits(Cm):
            cx = rx[j] if rx[j] <= bx else bx
            rest = X & ~self._window(ad, cx, bd)
            for j2 in bits(j2_pool):
                if not (rx[j2] <= rx[j] and rd[j2] <= rd[j]):
                    continue
                if not A.dominates((1 << j) | (1 << j2), rest):
                    continue
                for q2 in bits(Cm):
                    if rx[q2] <= rx[j] and rd[q2] >= rd[j2] and ld[j] <= ld[q2] and ld[j2] <= ld[q2]:
                        sub = self._sub(key, ad, cx, bd, q2, j, j2)
                        if sub is not None and sub is not _SKIP:
                            offer(qi | sub)
                            if done():
                                return best

        # split at a grid point c below the diagonal of l_i
        pts = X & A.point_mask
        pts_in_Fi = [p for p in bits(pts) if A.in_seg_rshadow(i, lx[p], ld[p])]
        xs = [x for x in A.xs if lx[i] <= x < bx]
        for cx in xs:
            for cd in A.ds:
                if not (bd <= cd <= ad and cd < ld[i]):
                    continue
                if any(lx[p] >= cx and ld[p] >= cd for p in pts_in_Fi):
                    continue
                left = self._sub(key, ad, cx, cd, q, i, i2)
                if left is None or left is _SKIP:
                    continue
                right = self._sub(key, cd, bx, bd, q, i, i2)
                if right is None or right is _SKIP:
                    continue
                offer(left | right)
                if done():
                    return best

        # split at c' inside F_{l_i}, handing the upper part to a new q2
        pts_list = list(bits(pts))
        for q2 in bits(C):
            if not (ld[i] <= ld[q2] and ld[i2] <= ld[q2] and lx[q2] >= lx[i]):
                continue
            for cx in xs:
                for cd in sorted({ld[q2], bd}):
                    if not (bd <= cd <= ad and cd >= ld[i]):
                        continue
                    if any(lx[p] >= cx and ld[p] >= cd for p in pts_list):
                        continue
                    left = self._sub(key, ad, cx, cd, q, i, i2)
                    if left is None or left is _SKIP:
                        continue
                    right = self._sub(key, cd, bx, bd, q2, i, i2)
                    if right is None or right is _SKIP:
                        continue
                    offer(left | right)
                    if done():
                        return best
        return best


def bd_init(key: BDKey, rep: ShadowRepresentation) -> tuple[DomSolution, bool]:
    return BDTable(rep).init(key)


def bd_solve(key: BDKey, rep: ShadowRepresentation, table: BDTable | None = None) -> DomSolution:
    table = BDTable(rep) if table is None else table
    if table.rep is not rep:
        raise ValueError("table belongs to a different representation")
    return table.solve(key)


def _check_horizontal(rep: ShadowRepresentation):
    if not rep.horizontal:
        raise GeometryError("bounded domination is implemented for horizontal (tolerance) representations")
    require_valid(rep)


def solve_bounded_ds(rep: ShadowRepresentation, *, table_out: list | None = None) -> DomSolution:
    """Smallest set of segments dominating every point and segment, or ``⊥``."""
    _check_horizontal(rep)
    aug, left, right = augment_with_dummies(rep)
    table = BDTable(aug)
    if table_out is not None:
        table_out.append(table)
    A = table.arena
    dl, dr = A.index[left], A.index[right]
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 10000))
    try:
        mask = table.solve_ints(A.ld[dl], A.rx[dr], A.rd[dr], dl, dr, dr)
    finally:
        sys.setrecursionlimit(old)
    if mask is None:
        return DomSolution.infeasible(NOT_DOMINATING)
    chosen = [eid for eid in A.ids_of(mask) if eid not in (left, right)]
    if not dominates(rep, chosen):
        raise InternalError("bounded solver returned a non-dominating set")
    return DomSolution.of(chosen)
