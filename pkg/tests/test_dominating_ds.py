import random
from itertools import combinations

from hypothesis import given, settings, strategies as st

from tolshadow._arena import bits
from tolshadow.bounded_ds import dominates, solve_bounded_ds
from tolshadow.dominating_ds import (
    CANONICALIZED_NOTICE,
    DKey,
    DSolver,
    augment_for_domination,
    compute_p_star,
    d_solve,
    is_normalized,
    solve_min_dominating_set,
)
from tolshadow.generate import generate_connected_shadow, generate_shadow
from tolshadow.geometry import Point, Segment
from tolshadow.model import ShadowRepresentation, canonicalize, connected_components
from tolshadow.oracle import brute_min_dominating_set

H = Segment.horizontal_at


class TestPStar:
    def test_single_point(self):
        assert compute_p_star(ShadowRepresentation(points=(("p", Point(0, 0)),))) == ["p"]

    def test_shadowed_point_dropped(self):
        rep = ShadowRepresentation(points=(("p1", Point(0, 0)), ("p2", Point(2, 3))))
        assert compute_p_star(rep) == ["p2"]

    def test_dummy_point_always_kept(self, fig4):
        aug, _, _, pid = augment_for_domination(canonicalize(fig4))
        assert pid in compute_p_star(aug)
        assert compute_p_star(aug)[-1] == pid


class TestNormalized:
    def test_segments_only(self, e1):
        assert is_normalized(e1, ["u", "v"])
        assert is_normalized(e1, [])

    def test_point_with_neighbour(self, e1):
        assert not is_normalized(e1, ["w", "u"])
        assert is_normalized(e1, ["w"])


class TestSolve:
    def test_e1(self, e1):
        sol = solve_min_dominating_set(e1)
        assert sol.size == 1 and dominates(e1, sol.ids)

    def test_isolated_point(self):
        rep = ShadowRepresentation(points=(("p", Point(0, 0)),))
        assert solve_min_dominating_set(rep).sorted_ids() == ["p"]

    def test_star(self):
        rep = ShadowRepresentation(
            points=(("a", Point(1, 2)), ("b", Point(3, 6)), ("c", Point(5, 1)), ("d", Point(7, 9))),
            segments=(("s", H(0, 10, 10)),),
        )
        sol = solve_min_dominating_set(rep)
        assert sol.sorted_ids() == ["s"]
        assert CANONICALIZED_NOTICE in sol.notes

    def test_no_points_routes_to_bounded(self, e1):
        rep = ShadowRepresentation(segments=e1.segments)
        sol = solve_min_dominating_set(rep)
        assert sol.size == solve_bounded_ds(rep).size == 1

    def test_no_segments_returns_points(self):
        rep = ShadowRepresentation(points=(("a", Point(0, 0)), ("b", Point(1, 5))))
        assert solve_min_dominating_set(rep).sorted_ids() == ["a", "b"]

    def test_disconnected(self, e1):
        far = ShadowRepresentation(points=(("z", Point(92, -60)),), segments=(("t", H(90, 95, -50)),))
        rep = e1.with_elements(points=far.points, segments=far.segments)
        assert len(connected_components(rep)) == 2
        sol = solve_min_dominating_set(rep)
        assert sol.size == brute_min_dominating_set(rep).size == 2

    def test_fig4(self, fig4):
        rep = canonicalize(fig4)
        assert connected_components(rep) == [["v1", "v2", "v3", "v4"], ["v5"]]
        sol = solve_min_dominating_set(rep)
        assert sol.size == brute_min_dominating_set(rep).size
        assert "v5" in sol.ids and dominates(rep, sol.ids)


def _solver(rep):
    aug, left, right, pid = augment_for_domination(rep)
    return DSolver(aug, left, right, pid)


def _entry_reference(S, j, i, i2):
    A = S.A
    Gj = S.G(j)
    pool = [k for k in bits(Gj & A.in_B(A.rx[i], A.rd[i2])) if k not in (i, i2)]
    base = (1 << i) | (1 << i2)
    for k in range(len(pool) + 1):
        for Z in combinations(pool, k):
            m = base | sum(1 << z for z in Z)
            if S.normalized(m) and A.dominates(m, Gj):
                return m
    return None


@settings(max_examples=30)
@given(st.integers(0, 10**6), st.integers(4, 8), st.sampled_from([0.5, 0.6, 0.7]))
def test_table_entries_match_exhaustive(seed, n, frac):
    rep = generate_connected_shadow(random.Random(seed), n, frac, tries=50000)
    if not rep.points:
        return
    S = _solver(rep)
    A = S.A
    for j in S.pstar:
        Gj = S.G(j)
        segs = list(bits(Gj & A.seg_mask))
        for i in segs:
            for i2 in segs:
                if not (A.rx[i2] <= A.rx[i] and A.rd[i2] <= A.rd[i]):
                    continue
                got = S.solve(j, i, i2)
                ref = _entry_reference(S, j, i, i2)
                assert (got is None) == (ref is None)
                if got is not None:
                    assert got.bit_count() == ref.bit_count()
                    assert got & ~Gj == 0 and S.normalized(got)
                    sol = d_solve(DKey(A.ids[j], A.ids[i], A.ids[i2]), S)
                    assert sol.size == got.bit_count()
                if any(A.lx[p] > A.rx[i] for p in bits(Gj & A.point_mask)):
                    assert got is None
                if not Gj & A.point_mask and got is not None:
                    assert not got & A.point_mask


@given(st.integers(0, 10**6), st.integers(2, 6), st.sampled_from([0.2, 0.4, 0.6]))
def test_matches_oracle_connected(seed, n, frac):
    rep = generate_connected_shadow(random.Random(seed), n, frac)
    sol = solve_min_dominating_set(rep)
    assert sol.size == brute_min_dominating_set(rep).size
    assert dominates(rep, sol.ids)
    assert is_normalized(rep, sol.ids)


@given(st.integers(0, 10**6), st.integers(1, 8), st.sampled_from([0.2, 0.5, 0.8]))
def test_matches_oracle_any(seed, n, frac):
    rep = generate_shadow(seed, n, frac)
    sol = solve_min_dominating_set(rep)
    assert sol.size == brute_min_dominating_set(rep).size
    assert dominates(rep, sol.ids)
