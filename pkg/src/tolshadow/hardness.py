"""
Special 3-Set Cover and its reduction to dominating set on multitolerance graphs.

An S3SC instance has elements ``A = {a_1..a_n}`` and ``W, X, Y, Z`` of size
``m`` each, with ``2n = 3m``. Gadget ``t`` with ``i < j < k`` contributes the
five sets ``{a_i, w_t}``, ``{w_t, x_t}``, ``{a_j, x_t, y_t}``, ``{y_t, z_t}``,
``{a_k, z_t}`` and every ``a`` lies in exactly two sets.

The reduction places one point per element: ``a_i`` on the line ``y = -x``
to the right, the ``w, x, y, z`` points on a line of slope 1/2 to the left,
each gadget's four points consecutive. Each set becomes a segment whose
shadow holds exactly the points of its elements (segment ``L{q+1}`` for set
``q``). Two more segments are added: ``E1 = L{5m+1}`` below everything,
adjacent to every other segment and hovering every point, and
``E2 = L{5m+2}`` whose only neighbour is ``E1``. A minimum dominating set is
then exactly one larger than a minimum cover.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .bounded_ds import InternalError, dominates
from .geometry import Point, Segment
from .model import ShadowRepresentation, neighbor_sets
from .oracle import (
    BudgetExceeded,
    brute_min_dominating_set,
    brute_min_set_cover,
    default_budget,
    exact_min_dominating_set,
    exact_min_set_cover,
)

__all__ = [
    "S3SCInstance",
    "ReductionOutput",
    "LReductionReport",
    "validate_s3sc",
    "gadget_sets",
    "make_s3sc",
    "generate_s3sc",
    "reduce_f",
    "backmap_g",
    "min_set_cover",
    "check_l_reduction",
    "sample_dominating_sets",
]

GROUPS = ("w", "x", "y", "z")


def gadget_sets(t: int, i: int, j: int, k: int) -> list[list[str]]:
    """The five sets of gadget ``t`` (1-based indices)."""
    return [
        [f"a{i}", f"w{t}"],
        [f"w{t}", f"x{t}"],
        [f"a{j}", f"x{t}", f"y{t}"],
        [f"y{t}", f"z{t}"],
        [f"a{k}", f"z{t}"],
    ]


@dataclass(frozen=True)
class S3SCInstance:
    n: int
    m: int
    sets: tuple[tuple[str, ...], ...]
    gadgets: tuple[tuple[int, int, int], ...]

    @property
    def A(self) -> list[str]:
        return [f"a{i}" for i in range(1, self.n + 1)]

    def group(self, name: str) -> list[str]:
        return [f"{name}{t}" for t in range(1, self.m + 1)]

    @property
    def universe(self) -> list[str]:
        out = self.A
        for g in GROUPS:
            out = out + self.group(g)
        return out

    def covers(self, chosen: Iterable[int]) -> bool:
        covered = set()
        for c in chosen:
            covered.update(self.sets[c])
        return covered >= set(self.universe)


def make_s3sc(gadgets: Sequence[tuple[int, int, int]], n: int | None = None) -> S3SCInstance:
    """Instance whose sets are exactly those of the given gadgets."""
    m = len(gadgets)
    n = (3 * m) // 2 if n is None else n
    sets = []
    for t, (i, j, k) in enumerate(gadgets, start=1):
        sets.extend(tuple(s) for s in gadget_sets(t, i, j, k))
    return S3SCInstance(n, m, tuple(sets), tuple(tuple(g) for g in gadgets))


def validate_s3sc(inst: S3SCInstance) -> tuple[bool, list[str]]:
    """Check the structural rules; returns ``(ok, diagnostics)``.

    Gadget indices must satisfy ``1 <= i < j < k <= n``.
    """
    issues = []
    n, m = inst.n, inst.m
    if n < 1 or m < 1:
        issues.append("n and m must be positive")
    if 2 * n != 3 * m:
        issues.append(f"2n = {2 * n} differs from 3m = {3 * m}")
    if len(inst.gadgets) != m:
        issues.append(f"expected {m} gadgets, got {len(inst.gadgets)}")
    if len(inst.sets) != 5 * m:
        issues.append(f"expected {5 * m} sets, got {len(inst.sets)}")
    universe = set(inst.universe)
    for idx, s in enumerate(inst.sets):
        if len(set(s)) != len(s):
            issues.append(f"set {idx} repeats an element")
        for e in s:
            if e not in universe:
                issues.append(f"set {idx} contains unknown element {e!r}")
    expected = []
    for t, g in enumerate(inst.gadgets, start=1):
        if len(g) != 3:
            issues.append(f"gadget {t} must have three indices")
            continue
        i, j, k = g
        if not (1 <= i < j < k <= n):
            issues.append(f"gadget {t} indices {g} violate 1 <= i < j < k <= n")
        expected.extend(frozenset(s) for s in gadget_sets(t, i, j, k))
    if sorted(map(sorted, expected)) != sorted(map(sorted, (frozenset(s) for s in inst.sets))):
        issues.append("sets differ from the ones prescribed by the gadgets")
    for a in inst.A:
        count = sum(a in s for s in inst.sets)
        if count != 2:
            issues.append(f"{a} lies in {count} sets, expected exactly 2")
    return (not issues, issues)


def generate_s3sc(seed, m: int, *, tries: int = 10000) -> S3SCInstance:
    """Random valid instance; ``m`` must be even."""
    if m < 2 or m % 2:
        raise ValueError("m must be an even integer >= 2")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    n = 3 * m // 2
    for _ in range(tries):
        slots = [a for a in range(1, n + 1) for _ in range(2)]
        rng.shuffle(slots)
        triples = [tuple(sorted(slots[3 * t: 3 * t + 3])) for t in range(m)]
        if all(len(set(tr)) == 3 for tr in triples):
            inst = make_s3sc(triples, n)
            ok, issues = validate_s3sc(inst)
            if not ok:
                raise InternalError("; ".join(issues))
            return inst
    raise RuntimeError(f"could not draw a valid instance with m={m}")


# --- reduction -----------------------------------------------------------------


@dataclass(frozen=True)
class ReductionOutput:
    shadow: ShadowRepresentation
    element_to_point: dict
    set_to_segment: dict
    extra: tuple[str, str]

    @property
    def segment_to_set(self) -> dict:
        return {v: k for k, v in self.set_to_segment.items()}


def _left_line_point(inst: S3SCInstance, eid: str) -> Point:
    # k = 4(t - 1) + offset; parameter u = 4m - k runs from 4m down to 1
    g, t = eid[0], int(eid[1:])
    k = 4 * (t - 1) + GROUPS.index(g)
    u = 4 * inst.m - k
    return Point(Fraction(-2 * u), Fraction(-u))


def _a_point(inst: S3SCInstance, i: int) -> Point:
    z = 8 * inst.m + 2 * i
    return Point(Fraction(z), Fraction(-z))


def reduce_f(inst: S3SCInstance) -> ReductionOutput:
    ok, issues = validate_s3sc(inst)
    if not ok:
        raise ValueError("invalid S3SC instance: " + "; ".join(issues))
    m = inst.m
    points = {}
    for idx, a in enumerate(inst.A, start=1):
        points[a] = _a_point(inst, idx)
    for g in GROUPS:
        for e in inst.group(g):
            points[e] = _left_line_point(inst, e)

    segments = {}
    set_to_segment = {}
    # per-set offsets keep coordinates distinct; they stay small enough that
    # each segment passes below the A points it must not see
    steps = 64 * m * (5 * m + 2)
    for idx, s in enumerate(inst.sets):
        eps = Fraction(idx + 1, steps)
        left = [points[e] for e in s if e[0] != "a"]
        right = [points[e] for e in s if e[0] == "a"]
        jx = max(p.x for p in left) + eps
        jd = max(p.d for p in left) + eps
        J = Point.from_xd(jx, jd)
        if right:
            a = right[0]
            R = Point.from_xd(a.x + eps, a.d + eps)
        else:
            R = J
        sid = f"L{idx + 1}"
        segments[sid] = Segment(J, R)
        set_to_segment[idx] = sid

    ends = list(points.values()) + [q for seg in segments.values() for q in (seg.p1, seg.p2)]
    xmin = min(p.x for p in ends)
    xmax = max(p.x for p in ends)
    dmin = min(p.d for p in ends)
    ymin = min(p.y for p in ends)
    e1, e2 = f"L{5 * m + 1}", f"L{5 * m + 2}"
    d_r = min(ymin - (xmax + 1) - 1, dmin - 3)
    segments[e1] = Segment(Point.from_xd(xmin - 1, dmin - 1), Point.from_xd(xmax + 1, d_r))
    tip = Point.from_xd(xmax + 2, d_r + 1)
    segments[e2] = Segment(tip, tip)

    rep = ShadowRepresentation(tuple(points.items()), tuple(segments.items()))
    out = ReductionOutput(rep, {e: e for e in points}, set_to_segment, (e1, e2))
    problems = reduction_issues(inst, out)
    if problems:
        raise InternalError("reduction post-check failed: " + "; ".join(problems))
    return out


def reduction_issues(inst: S3SCInstance, out: ReductionOutput) -> list[str]:
    """Hard post-conditions of :func:`reduce_f`; empty when all hold."""
    rep = out.shadow
    issues = []
    if len(rep.points) != len(inst.universe):
        issues.append("point count differs from the universe size")
    if len(rep.segments) != 5 * inst.m + 2:
        issues.append("segment count differs from 5m + 2")
    for sid, seg in rep.segments:
        if seg.p2.x < seg.p1.x or seg.p2.y - seg.p1.y > seg.p2.x - seg.p1.x:
            issues.append(f"{sid} violates the slope bounds")
    nb = neighbor_sets(rep)
    for idx, s in enumerate(inst.sets):
        sid = out.set_to_segment[idx]
        got = {p for p in nb[sid] if rep.is_point(p)}
        want = {out.element_to_point[e] for e in s}
        if got != want:
            issues.append(f"{sid} sees points {sorted(got)} instead of {sorted(want)}")
    e1, e2 = out.extra
    if nb[e2] != {e1}:
        issues.append(f"{e2} has neighbours {sorted(nb[e2])}, expected only {e1}")
    seg1 = rep.element(e1)
    for pid, p in rep.points:
        # E1 hovers p exactly when it meets the shadow of p
        if not (seg1.p1.x <= p.x and seg1.p1.d <= p.d):
            issues.append(f"{e1} does not hover {pid}")
    others = {sid for sid, _ in rep.segments} - {e1, e2}
    if not others <= nb[e1]:
        issues.append(f"{e1} misses segments {sorted(others - nb[e1])}")
    return issues


def backmap_g(inst: S3SCInstance, out: ReductionOutput, D: Iterable[str], *, nb: dict | None = None) -> list[int]:
    """Turn a dominating set of the reduced graph into a cover (set indices).

    ``E2`` is swapped for ``E1``, each chosen point is replaced by the first
    set segment whose shadow holds it, and ``E1`` is dropped.
    """
    rep = out.shadow
    nb = neighbor_sets(rep) if nb is None else nb
    D = set(D)
    unknown = D - set(rep.ids)
    if unknown:
        raise ValueError(f"unknown ids {sorted(unknown)}")
    if not dominates(rep, D, nb=nb):
        raise ValueError("D does not dominate the reduced graph")
    e1, e2 = out.extra
    if e2 in D:
        D = (D - {e2}) | {e1}
    seg_to_set = out.segment_to_set
    point_to_element = {v: k for k, v in out.element_to_point.items()}
    chosen = set()
    for v in D:
        if v == e1:
            continue
        if rep.is_point(v):
            e = point_to_element[v]
            chosen.add(min(idx for idx, s in enumerate(inst.sets) if e in s))
        else:
            chosen.add(seg_to_set[v])
    cover = sorted(chosen)
    if not inst.covers(cover):
        raise InternalError("back-mapped sets do not cover the universe")
    return cover


def min_set_cover(inst: S3SCInstance, *, budget: int | None = None) -> tuple[int, tuple[int, ...]]:
    """Exhaustive within the oracle budget, branch and bound beyond it."""
    budget = default_budget() if budget is None else budget
    try:
        found = brute_min_set_cover(inst.universe, inst.sets, budget=budget)
    except BudgetExceeded:
        found = exact_min_set_cover(inst.universe, inst.sets)
    if found is None:
        raise InternalError("a valid instance always has a cover")
    return found


def sample_dominating_sets(rep: ShadowRepresentation, count: int, seed=0, *, nb: dict | None = None) -> list[frozenset]:
    """Random dominating sets: a random subset completed greedily at random."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    nb = neighbor_sets(rep) if nb is None else nb
    ids = rep.ids
    out = []
    for _ in range(count):
        D = {v for v in ids if rng.random() < rng.choice((0.1, 0.3, 0.5))}
        undominated = [v for v in ids if v not in D and not nb[v] & D]
        while undominated:
            v = rng.choice(undominated)
            D.add(rng.choice(sorted(nb[v] | {v})))
            undominated = [u for u in ids if u not in D and not nb[u] & D]
        if rng.random() < 0.5:
            for v in rng.sample(sorted(D), len(D)):
                if dominates(rep, D - {v}, nb=nb):
                    D.discard(v)
        out.append(frozenset(D))
    return out


@dataclass
class LReductionReport:
    opt_cover: int
    opt_domination: int
    claim_equality: bool
    alpha_bound: bool
    samples: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.claim_equality and self.alpha_bound and not self.violations


def check_l_reduction(
    inst: S3SCInstance,
    *,
    samples: int = 50,
    seed=0,
    budget: int | None = None,
    exact_beyond_budget: bool = True,
) -> LReductionReport:
    """Verify the optimum relation and the back-map bounds on one instance.

    Exhaustive search is used within ``budget``. Larger instances use
    branch and bound when ``exact_beyond_budget`` is set and are refused
    with :class:`BudgetExceeded` otherwise.
    """
    budget = default_budget() if budget is None else budget
    out = reduce_f(inst)
    rep = out.shadow
    nb = neighbor_sets(rep)
    if len(inst.sets) <= budget:
        opt_cover = brute_min_set_cover(inst.universe, inst.sets, budget=budget)[0]
    elif exact_beyond_budget:
        opt_cover = exact_min_set_cover(inst.universe, inst.sets)[0]
    else:
        raise BudgetExceeded(f"{len(inst.sets)} sets exceed the oracle budget of {budget}")
    if len(rep) <= budget:
        opt_dom = brute_min_dominating_set(rep, budget=budget, nb=nb).size
    elif exact_beyond_budget:
        opt_dom = exact_min_dominating_set(rep, nb=nb).size
    else:
        raise BudgetExceeded(f"{len(rep)} vertices exceed the oracle budget of {budget}")
    report = LReductionReport(
        opt_cover=opt_cover,
        opt_domination=opt_dom,
        claim_equality=opt_dom == opt_cover + 1,
        alpha_bound=opt_dom <= 2 * opt_cover,
    )
    for D in sample_dominating_sets(rep, samples, seed, nb=nb):
        report.samples += 1
        cover = backmap_g(inst, out, D, nb=nb)
        if not inst.covers(cover):
            report.violations.append((sorted(D), "not a cover"))
        elif len(cover) > len(D) - 1:
            report.violations.append((sorted(D), f"|g(D)| = {len(cover)} > |D| - 1 = {len(D) - 1}"))
        elif len(cover) - opt_cover > len(D) - opt_dom:
            report.violations.append((sorted(D), "back-map error exceeds the domination error"))
    return report
