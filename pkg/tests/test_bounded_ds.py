import random

import pytest
from hypothesis import given, settings, strategies as st

from tolshadow.bounded_ds import (
    NOT_DOMINATING,
    BDKey,
    BDTable,
    augment_dummies,
    augment_with_dummies,
    bd_init,
    bd_solve,
    dominates,
    solve_bounded_ds,
)
from tolshadow.generate import generate_shadow
from tolshadow.geometry import GeometryError, Point, Segment, select_X
from tolshadow.model import ShadowRepresentation, neighbor_sets
from tolshadow.oracle import brute_min_dominating_set

from conftest import xd


def whole_window(aug, left, right):
    L, R = aug.element(left), aug.element(right)
    return BDKey(L.p1, R.p2, left, right, right)


class TestAugment:
    def test_e1(self, e1):
        aug, left, right = augment_with_dummies(e1)
        assert len(aug.segments) == 4
        nb = neighbor_sets(aug)
        assert nb[left] == nb[right] == frozenset()

    def test_no_segments(self):
        rep = ShadowRepresentation(points=(("p", Point(0, 0)),))
        assert len(augment_dummies(rep).segments) == 2

    def test_twice_adds_four(self, e1):
        assert len(augment_dummies(augment_dummies(e1)).segments) == 6


class TestInitAndSolve:
    def test_whole_window_on_e1(self, e1):
        aug, left, right = augment_with_dummies(e1)
        key = whole_window(aug, left, right)
        init, final = bd_init(key, aug)
        assert init.feasible and not final
        assert set(init.ids) == {left, right, "u", "v"}
        assert set(bd_solve(key, aug).ids) == {left, "u", right}

    def test_empty_window(self, e1):
        aug, left, right = augment_with_dummies(e1)
        L = aug.element(left)
        key = BDKey(L.p1, L.p1, left, left, left)
        sol, final = bd_init(key, aug)
        assert final and set(sol.ids) == {left}

    def test_lonely_point_is_infeasible(self):
        rep = ShadowRepresentation(
            points=(("p", Point(5, 0)),),
            segments=(("s", Segment.horizontal_at(0, 1, 10)),),
        )
        aug, left, right = augment_with_dummies(rep)
        sol, final = bd_init(whole_window(aug, left, right), aug)
        assert final and not sol.feasible

    def test_inadmissible_key(self, e1):
        aug, left, right = augment_with_dummies(e1)
        with pytest.raises(GeometryError):
            bd_solve(BDKey(aug.element(left).p1, aug.element(right).p2, right, left, left), aug)
        with pytest.raises(GeometryError):
            bd_solve(BDKey(xd(100, 100), aug.element(right).p2, left, right, right), aug)

    def test_foreign_table(self, e1):
        aug, left, right = augment_with_dummies(e1)
        with pytest.raises(ValueError):
            bd_solve(whole_window(aug, left, right), aug, BDTable(augment_dummies(e1)))


class TestSolveBounded:
    def test_e1(self, e1):
        assert solve_bounded_ds(e1).sorted_ids() == ["u"]

    def test_points_only(self):
        sol = solve_bounded_ds(ShadowRepresentation(points=(("p", Point(0, 0)),)))
        assert not sol.feasible and sol.reason == NOT_DOMINATING

    def test_single_segment(self):
        rep = ShadowRepresentation(segments=(("s", Segment.horizontal_at(0, 2, 5)),))
        assert solve_bounded_ds(rep).sorted_ids() == ["s"]

    def test_empty(self):
        assert solve_bounded_ds(ShadowRepresentation()).size == 0

    def test_rejects_slanted(self):
        rep = ShadowRepresentation(segments=(("s", Segment(Point(0, 0), Point(2, 1))),))
        with pytest.raises(GeometryError):
            solve_bounded_ds(rep)


@given(st.integers(0, 10**6), st.integers(1, 8), st.sampled_from([0.0, 0.2, 0.4, 0.6]))
def test_matches_oracle(seed, n, frac):
    rep = generate_shadow(seed, n, frac)
    got = solve_bounded_ds(rep)
    ref = brute_min_dominating_set(rep, pool=rep.segment_ids)
    assert got.size == ref.size
    if got.feasible:
        assert dominates(rep, got.ids)


@settings(max_examples=25)
@given(st.integers(0, 10**6), st.integers(1, 6))
def test_table_entries_match_constrained_oracle(seed, n):
    rep = generate_shadow(seed, n, 0.3)
    aug, left, right = augment_with_dummies(rep)
    tables = []
    solve_bounded_ds(rep, table_out=tables)
    (table,) = tables
    nb = neighbor_sets(table.rep)
    elements = list(table.rep.elements())
    segs = table.rep.segment_ids
    for key, sol in table.entries():
        X = select_X(key.a, key.b, elements)
        ref = brute_min_dominating_set(
            table.rep, pool=segs, targets=X, required={key.q, key.i, key.i2},
            end_pair=(key.i, key.i2), diag_leftmost=key.q, nb=nb,
        )
        assert sol.size == ref.size, key
        if sol.feasible:
            Z = set(sol.ids)
            assert {key.q, key.i, key.i2} <= Z
            assert dominates(table.rep, Z, X, nb)


@given(st.integers(0, 10**6), st.integers(1, 8))
def test_window_monotone(seed, n):
    rep = generate_shadow(seed, n, 0.3)
    elements = list(rep.elements())
    rng = random.Random(seed)
    coords = [p for _, e in elements for p in ((e,) if isinstance(e, Point) else (e.p1, e.p2))]
    a = rng.choice(coords)
    b1 = xd(max(p.x for p in coords) + 1, min(p.d for p in coords))
    b2 = xd(rng.choice(coords).x, max(b1.d, min(a.d, rng.choice(coords).d)))
    if b2.d > a.d:
        return
    assert select_X(a, b2, elements) <= select_X(a, b1, elements)
