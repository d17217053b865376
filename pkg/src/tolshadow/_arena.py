"""Integer bitmask view of a shadow representation used by the solvers.

Coordinates are scaled by the lcm of their denominators so every comparison
is an integer comparison. Elements are indexed by sorted id with ids starting
with ``__`` (dummies) moved to the end; sets of elements are Python ints used
as bitmasks, so ``lowbit`` order equals sorted-id order.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from fractions import Fraction
from math import lcm

from .geometry import Point
from .model import ShadowRepresentation

DUMMY_PREFIX = "__"


def id_order_key(eid: str):
    return (eid.startswith(DUMMY_PREFIX), eid)


def bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def better(A, B) -> bool:
    """Is solution mask ``A`` strictly preferable to ``B``? ``None`` is infeasible."""
    if A is None:
        return False
    if B is None:
        return True
    ca, cb = A.bit_count(), B.bit_count()
    if ca != cb:
        return ca < cb
    diff = A ^ B
    return diff != 0 and (diff & -diff & A) != 0


def seg_shadow_has(lx, ld, rx, rd, px, pd) -> bool:
    # some anchor on the segment has (px, pd) in its lower-left quadrant
    return px <= rx and pd <= ld and (px - lx) * (ld - rd) <= (ld - pd) * (rx - lx)


def seg_rshadow_has(lx, ld, rx, rd, px, pd) -> bool:
    return px >= lx and pd >= rd and (ld - pd) * (rx - lx) <= (px - lx) * (ld - rd)


class Arena:
    def __init__(self, rep: ShadowRepresentation, ids=None):
        chosen = rep.ids if ids is None else list(ids)
        self.rep = rep
        self.ids = sorted(chosen, key=id_order_key)
        self.index = {eid: k for k, eid in enumerate(self.ids)}
        self.n = len(self.ids)
        raw = [rep.element(eid) for eid in self.ids]
        dens = [1]
        for e in raw:
            for p in ((e,) if isinstance(e, Point) else (e.p1, e.p2)):
                dens.append(p.x.denominator)
                dens.append(p.d.denominator)
        self.scale = lcm(*dens)
        s = self.scale
        self.is_point = [isinstance(e, Point) for e in raw]
        self.lx, self.ld, self.rx, self.rd = [], [], [], []
        for e in raw:
            l, r = (e, e) if isinstance(e, Point) else (e.p1, e.p2)
            self.lx.append(int(l.x * s))
            self.ld.append(int(l.d * s))
            self.rx.append(int(r.x * s))
            self.rd.append(int(r.d * s))
        self.point_mask = sum(1 << k for k in range(self.n) if self.is_point[k])
        self.seg_mask = ((1 << self.n) - 1) & ~self.point_mask
        self.full = (1 << self.n) - 1
        self._build_relations()
        seg_idx = [k for k in range(self.n) if not self.is_point[k]]
        self.xs = sorted({v for k in seg_idx for v in (self.lx[k], self.rx[k])})
        self.ds = sorted({v for k in seg_idx for v in (self.ld[k], self.rd[k])})

    # --- relations ---------------------------------------------------------

    def in_seg_shadow(self, s: int, px: int, pd: int) -> bool:
        return seg_shadow_has(self.lx[s], self.ld[s], self.rx[s], self.rd[s], px, pd)

    def in_seg_rshadow(self, s: int, px: int, pd: int) -> bool:
        return seg_rshadow_has(self.lx[s], self.ld[s], self.rx[s], self.rd[s], px, pd)

    def _adjacent(self, u: int, v: int) -> bool:
        pu, pv = self.is_point[u], self.is_point[v]
        if pu and pv:
            return False
        if pu:
            return self.in_seg_shadow(v, self.lx[u], self.ld[u])
        if pv:
            return self.in_seg_shadow(u, self.lx[v], self.ld[v])
        return self._meets_shadow(v, u) or self._meets_shadow(u, v)

    def _meets_shadow(self, v: int, u: int) -> bool:
        # segment v meets the shadow of segment u
        return (
            self.in_seg_shadow(u, self.lx[v], self.ld[v])
            or self.in_seg_shadow(u, self.rx[v], self.rd[v])
            or self.in_seg_rshadow(v, self.lx[u], self.ld[u])
            or self.in_seg_rshadow(v, self.rx[u], self.rd[u])
        )

    def _hovers(self, u: int, p: int) -> bool:
        # u meets the shadow of point p
        px, pd = self.lx[p], self.ld[p]
        if self.is_point[u]:
            return self.lx[u] <= px and self.ld[u] <= pd
        return self.in_seg_rshadow(u, px, pd)

    def _build_relations(self):
        n = self.n
        self.nb = [1 << k for k in range(n)]
        for u in range(n):
            for v in range(u + 1, n):
                if self._adjacent(u, v):
                    self.nb[u] |= 1 << v
                    self.nb[v] |= 1 << u
        self.hov = [0] * n
        for p in range(n):
            if self.is_point[p]:
                # hovering vertices exclude existing neighbours
                self.hov[p] = sum(1 << u for u in range(n) if u != p and self._hovers(u, p)) & ~self.nb[p]

    # --- helpers -----------------------------------------------------------

    def bit(self, eid: str) -> int:
        return 1 << self.index[eid]

    def mask_of(self, ids) -> int:
        m = 0
        for eid in ids:
            m |= 1 << self.index[eid]
        return m

    def ids_of(self, mask: int) -> list[str]:
        return [self.ids[k] for k in bits(mask)]

    def to_int(self, value: Fraction) -> int | None:
        scaled = Fraction(value) * self.scale
        return int(scaled) if scaled.denominator == 1 else None

    def to_fraction(self, value: int) -> Fraction:
        return Fraction(value, self.scale)

    def dominated_by(self, Z: int) -> int:
        out = 0
        for k in bits(Z):
            out |= self.nb[k]
        return out

    def dominates(self, Z: int, targets: int) -> bool:
        return targets & ~self.dominated_by(Z) == 0

    def select(self, pred, mask=None) -> int:
        mask = self.full if mask is None else mask
        return sum(1 << k for k in bits(mask) if pred(k))

    def window(self, ad: int, bx: int, bd: int, mask=None) -> int:
        """Elements inside ``{x < bx, bd <= d <= ad}``."""
        lx, ld, rx, rd = self.lx, self.ld, self.rx, self.rd
        return self.select(lambda k: rx[k] < bx and rd[k] >= bd and ld[k] <= ad, mask)

    def in_B(self, x: int, d: int, mask=None) -> int:
        """Elements inside the closed region ``{x' <= x, d' >= d}``."""
        lx, ld, rx, rd = self.lx, self.ld, self.rx, self.rd
        return self.select(lambda k: rx[k] <= x and rd[k] >= d, mask)

    def in_A(self, x: int, d: int, mask=None) -> int:
        lx, ld = self.lx, self.ld
        return self.select(lambda k: lx[k] >= x and ld[k] <= d, mask)

    def grid_x_above(self, v: int) -> int | None:
        k = bisect_right(self.xs, v)
        return self.xs[k] if k < len(self.xs) else None

    def grid_d_at_least(self, v: int) -> int | None:
        k = bisect_left(self.ds, v)
        return self.ds[k] if k < len(self.ds) else None

    def grid_d_at_most(self, v: int) -> int | None:
        k = bisect_right(self.ds, v)
        return self.ds[k - 1] if k > 0 else None
