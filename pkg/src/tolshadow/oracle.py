"""
Exhaustive reference solvers.

These enumerate subsets in order of size and then lexicographic sorted ids,
the same tie-break the solvers use, and refuse inputs above a budget rather
than running for hours. The default budget of 14 candidates can be changed
with the ``TOLSHADOW_ORACLE_BUDGET`` environment variable.
"""

from __future__ import annotations

import os
from itertools import combinations
from typing import Iterable, Sequence

from .geometry import Point
from .model import ShadowRepresentation, neighbor_sets
from .solution import DomSolution

__all__ = [
    "BudgetExceeded",
    "default_budget",
    "brute_min_dominating_set",
    "brute_min_set_cover",
    "has_start_pair",
    "has_end_pair",
    "diagonally_leftmost",
    "exact_min_set_cover",
    "exact_min_dominating_set",
]

DEFAULT_BUDGET = 14


class BudgetExceeded(RuntimeError):
    """The input is larger than the exhaustive search is allowed to handle."""


def default_budget() -> int:
    raw = os.environ.get("TOLSHADOW_ORACLE_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"TOLSHADOW_ORACLE_BUDGET must be an integer, got {raw!r}") from None
    if value < 0:
        raise ValueError("TOLSHADOW_ORACLE_BUDGET must be non-negative")
    return value


def _ends(e):
    return (e, e) if isinstance(e, Point) else (e.p1, e.p2)


def has_end_pair(rep: ShadowRepresentation, Z: Iterable[str], i: str, i2: str) -> bool:
    """``i``, ``i2`` in ``Z`` and every member of ``Z`` inside ``B`` at ``(r_i.x, r_i2.d)``."""
    Z = set(Z)
    if i not in Z or i2 not in Z:
        return False
    ri, ri2 = _ends(rep.element(i))[1], _ends(rep.element(i2))[1]
    if not (ri2.x <= ri.x and ri2.d <= ri.d):
        return False
    return all(_ends(rep.element(s))[1].x <= ri.x and _ends(rep.element(s))[1].d >= ri2.d for s in Z)


def has_start_pair(rep: ShadowRepresentation, Z: Iterable[str], j: str, j2: str) -> bool:
    """``j``, ``j2`` in ``Z`` and every member of ``Z`` inside ``A`` at ``(l_j.x, l_j2.d)``."""
    Z = set(Z)
    if j not in Z or j2 not in Z:
        return False
    lj, lj2 = _ends(rep.element(j))[0], _ends(rep.element(j2))[0]
    if not (lj.x <= lj2.x and lj.d <= lj2.d):
        return False
    return all(_ends(rep.element(s))[0].x >= lj.x and _ends(rep.element(s))[0].d <= lj2.d for s in Z)


def diagonally_leftmost(rep: ShadowRepresentation, Z: Iterable[str]) -> str | None:
    """Member whose left endpoint has the largest diagonal coordinate."""
    Z = list(Z)
    if not Z:
        return None
    return max(Z, key=lambda s: (_ends(rep.element(s))[0].d, s))


def brute_min_dominating_set(
    rep: ShadowRepresentation,
    pool: Iterable[str] | None = None,
    *,
    targets: Iterable[str] | None = None,
    required: Iterable[str] = (),
    start_pair: tuple[str, str] | None = None,
    end_pair: tuple[str, str] | None = None,
    diag_leftmost: str | None = None,
    budget: int | None = None,
    nb: dict | None = None,
) -> DomSolution:
    """Smallest ``Z`` within ``pool`` dominating ``targets`` under the optional constraints.

    ``pool`` defaults to every element and ``targets`` to every element.
    """
    budget = default_budget() if budget is None else budget
    pool = sorted(rep.ids if pool is None else set(pool))
    if len(pool) > budget:
        raise BudgetExceeded(f"{len(pool)} candidates exceed the oracle budget of {budget}")
    nb = neighbor_sets(rep) if nb is None else nb
    targets = list(rep.ids if targets is None else targets)
    required = set(required)
    closed = {v: nb[v] | {v} for v in pool}
    for k in range(len(pool) + 1):
        for Z in combinations(pool, k):
            Zs = set(Z)
            if not required <= Zs:
                continue
            covered = set().union(*(closed[v] for v in Z)) if Z else set()
            if any(t not in covered for t in targets):
                continue
            if end_pair is not None and not has_end_pair(rep, Zs, *end_pair):
                continue
            if start_pair is not None and not has_start_pair(rep, Zs, *start_pair):
                continue
            if diag_leftmost is not None and diagonally_leftmost(rep, Zs) != diag_leftmost:
                continue
            return DomSolution.of(Z)
    return DomSolution.infeasible("no subset of the pool satisfies the constraints")


def brute_min_set_cover(
    universe: Iterable, sets: Sequence[Iterable], *, budget: int | None = None
) -> tuple[int, tuple[int, ...]] | None:
    """Minimum number of sets covering ``universe``; returns ``(size, indices)`` or ``None``."""
    budget = default_budget() if budget is None else budget
    sets = [frozenset(s) for s in sets]
    if len(sets) > budget:
        raise BudgetExceeded(f"{len(sets)} sets exceed the oracle budget of {budget}")
    universe = frozenset(universe)
    for k in range(len(sets) + 1):
        for combo in combinations(range(len(sets)), k):
            if universe <= frozenset().union(*(sets[c] for c in combo)):
                return k, combo
    return None


def _bb_cover(universe: frozenset, options: dict, upper: int | None):
    """Smallest list of option keys whose values cover ``universe``.

    Branches on the uncovered item with the fewest options; prunes with
    ``chosen + ceil(uncovered / largest option)``. ``options`` maps keys (in
    preference order) to frozensets.
    """
    keys = list(options)
    by_item = {u: [k for k in keys if u in options[k]] for u in universe}
    if any(not ks for ks in by_item.values()):
        return None
    largest = max((len(v) for v in options.values()), default=0)
    best: list = [None]
    limit = [upper + 1 if upper is not None else len(keys) + 1]

    def rec(uncovered: frozenset, chosen: list):
        if not uncovered:
            if len(chosen) < limit[0]:
                best[0] = list(chosen)
                limit[0] = len(chosen)
            return
        if len(chosen) + -(-len(uncovered) // largest) >= limit[0]:
            return
        item = min(uncovered, key=lambda u: (len(by_item[u]), str(u)))
        for k in by_item[item]:
            chosen.append(k)
            rec(uncovered - options[k], chosen)
            chosen.pop()

    rec(frozenset(universe), [])
    return best[0]


def exact_min_set_cover(universe: Iterable, sets: Sequence[Iterable]) -> tuple[int, tuple[int, ...]] | None:
    """Branch-and-bound minimum set cover for instances beyond the exhaustive budget."""
    options = {k: frozenset(s) for k, s in enumerate(sets)}
    found = _bb_cover(frozenset(universe), options, None)
    if found is None:
        return None
    return len(found), tuple(sorted(found))


def exact_min_dominating_set(rep: ShadowRepresentation, *, nb: dict | None = None) -> DomSolution:
    """Branch-and-bound minimum dominating set (size exact; witness not tie-broken)."""
    nb = neighbor_sets(rep) if nb is None else nb
    options = {v: frozenset(nb[v] | {v}) for v in rep.ids}
    found = _bb_cover(frozenset(rep.ids), options, None)
    if found is None:
        return DomSolution.infeasible("empty pool")
    return DomSolution.of(found)
