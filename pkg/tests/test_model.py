import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from tolshadow.generate import generate_multitolerance, generate_shadow, generate_tolerance
from tolshadow.geometry import GeometryError, Point, Segment
from tolshadow.model import (
    MultitoleranceRepresentation,
    MultitoleranceVertex,
    ShadowRepresentation,
    ToleranceRepresentation,
    ToleranceVertex,
    Trapezoid,
    ValidationError,
    adjacency_matrix,
    angle_cot_at,
    canonicalize,
    definitional_adjacency,
    hovering,
    hovering_sets,
    is_canonical,
    multitol_adjacent,
    multitolerance_to_shadow,
    neighbor_sets,
    perturb_tolerance,
    shadow_adjacent,
    shadow_from_trapezoids,
    tol_adjacent,
    trap_adjacent,
    trapezoids_from_multitolerance,
    trapezoids_from_tolerance,
    validate_shadow,
)

seeds = st.integers(0, 10**6)


def TV(i, l, r, t):
    return ToleranceVertex(i, l, r, t)


class TestToleranceAdjacency:
    def test_examples(self):
        u = TV("u", 0, 4, 1)
        assert tol_adjacent(u, TV("v", 2, 8, F(5, 2)))
        assert tol_adjacent(u, TV("w", F(29, 10), F(59, 10), 10))
        assert not tol_adjacent(TV("a", 0, 1, 1), TV("b", 5, 6, 1))

    def test_bounded_flag(self):
        assert TV("a", 0, 4, 4).bounded
        assert not TV("a", 0, 4, 5).bounded


class TestMultitolerance:
    def test_full_interval_tolerance(self):
        u = MultitoleranceVertex("u", 2, 3, 2, 3)
        v = MultitoleranceVertex("v", 0, 10, 4, 6)
        assert multitol_adjacent(u, v)

    def test_two_unbounded(self):
        assert not multitol_adjacent(MultitoleranceVertex("u", 0, 5), MultitoleranceVertex("v", 1, 4))

    def test_embedding_matches_tolerance(self):
        rng = random.Random(7)
        for _ in range(1000):
            vs = []
            for name in "uv":
                l = rng.randint(0, 30)
                r = l + rng.randint(1, 15)
                t = rng.randint(1, r - l)
                vs.append(TV(name, l, r, t))
            m = [MultitoleranceVertex(v.id, v.l, v.r, min(v.l + v.t, v.r), max(v.r - v.t, v.l)) for v in vs]
            assert multitol_adjacent(*m) == tol_adjacent(*vs)

    def test_partial_tolerant_points_rejected(self):
        with pytest.raises(ValidationError):
            MultitoleranceVertex("u", 0, 5, lt=2)


class TestTrapezoids:
    def test_tolerance_construction(self):
        rep = ToleranceRepresentation((TV("v", 0, 4, 1), TV("w", F(29, 10), F(59, 10), 10)))
        v, w = trapezoids_from_tolerance(rep)
        assert (v.a, v.d, v.c, v.b) == (0, 3, 1, 4) and v.cot1 == v.cot2 == 1
        assert (w.a, w.d, w.c, w.b) == (F(29, 10), F(29, 10), F(59, 10), F(59, 10))
        assert w.b - w.a == 3

    def test_multitolerance_construction(self):
        rep = MultitoleranceRepresentation((MultitoleranceVertex("v", 0, 10, 3, 8),))
        (T,) = trapezoids_from_multitolerance(rep)
        assert (T.a, T.d, T.c, T.b) == (0, 8, 3, 10)
        assert (T.cot1, T.cot2) == (3, 2)
        (R,) = trapezoids_from_multitolerance(MultitoleranceRepresentation((MultitoleranceVertex("v", 0, 10, 0, 10),)))
        assert R.cot1 == R.cot2 == 0

    def test_angle_interpolation(self):
        P = Trapezoid("p", 0, 6, 2, 8, True)
        assert all(angle_cot_at(P, x) == 2 for x in range(7))
        T = Trapezoid("t", 0, 8, 3, 10, True)
        assert angle_cot_at(T, 0) == T.cot1 and angle_cot_at(T, 8) == T.cot2
        with pytest.raises(GeometryError):
            angle_cot_at(T, 9)

    def test_trichotomy_right_side(self):
        T = Trapezoid("t", 0, 4, 1, 5, True)
        assert not trap_adjacent(T, Trapezoid("v", 5, 5, 100, 100, False))


class TestShadowConstruction:
    def test_e1(self, e1):
        assert e1.delta == 8
        assert dict(e1.segments) == {
            "u": Segment(Point(0, 7), Point(3, 7)),
            "v": Segment(Point(2, F(11, 2)), Point(F(11, 2), F(11, 2))),
        }
        assert dict(e1.points) == {"w": Point(F(29, 10), 5)}
        assert e1.horizontal

    def test_all_unbounded(self):
        rep = tolerance_to_shadow_of([TV("a", 0, 1, 5), TV("b", 3, 4, 5)])
        assert rep.segments == () and len(rep.points) == 2

    def test_e1_adjacency(self, e1):
        assert shadow_adjacent(e1, "u", "v")
        assert shadow_adjacent(e1, "u", "w")
        assert shadow_adjacent(e1, "v", "w")

    def test_unknown_id(self, e1):
        with pytest.raises(KeyError):
            shadow_adjacent(e1, "u", "nope")

    def test_duplicate_ids_rejected(self):
        with pytest.raises(ValidationError):
            ShadowRepresentation(points=(("a", Point(0, 0)), ("a", Point(1, 1))))


def tolerance_to_shadow_of(vertices):
    from tolshadow.model import tolerance_to_shadow

    return tolerance_to_shadow(ToleranceRepresentation(tuple(vertices)))


class TestHoveringAndCanonical:
    def test_layout(self, fig4):
        assert shadow_adjacent(fig4, "v2", "v3")
        assert not shadow_adjacent(fig4, "v2", "v4")
        assert hovering(fig4, "v2", "v1")
        assert hovering(fig4, "v5", "v4")
        assert hovering_sets(fig4)["v1"] == frozenset()

    def test_hovering_preconditions(self, fig4):
        with pytest.raises(GeometryError):
            hovering(fig4, "v3", "v1")
        with pytest.raises(ValueError):
            hovering(fig4, "v2", "v2")

    def test_canonicalize_converts_only_lonely_points(self, fig4):
        c = canonicalize(fig4)
        assert c.point_ids == ["v2", "v5"]
        assert dict(c.segments)["v1"].degenerate
        assert is_canonical(c) and not is_canonical(fig4)
        assert neighbor_sets(c) == neighbor_sets(fig4)

    def test_canonical_is_identity(self, fig4):
        c = canonicalize(fig4)
        assert canonicalize(c) == c

    def test_e1_point_is_not_inevitable(self, e1):
        c = canonicalize(e1)
        assert c.point_ids == [] and neighbor_sets(c) == neighbor_sets(e1)


def _fidelity_mismatches(rep, shadow):
    return [k for k, adj in definitional_adjacency(rep).items() if shadow_adjacent(shadow, *sorted(k)) != adj]


@given(seeds, st.integers(1, 12), st.sampled_from([0.0, 0.3, 0.6, 1.0]))
def test_tolerance_fidelity(seed, n, frac):
    rep = generate_tolerance(seed, n, frac)
    sh = tolerance_to_shadow_of(rep.vertices)
    assert not _fidelity_mismatches(rep, sh)
    assert sh.horizontal
    assert not validate_shadow(sh, distinct_diagonals=True)


@given(seeds, st.integers(1, 10), st.sampled_from([0.0, 0.3, 0.6]))
def test_multitolerance_fidelity(seed, n, frac):
    rep = generate_multitolerance(seed, n, frac)
    sh = multitolerance_to_shadow(rep)
    assert not _fidelity_mismatches(rep, sh)
    for _, s in sh.segments:
        assert s.p2.x >= s.p1.x and s.p2.y - s.p1.y <= s.p2.x - s.p1.x


@given(seeds, st.integers(1, 10))
def test_trap_adjacent_matches_definition(seed, n):
    rep = generate_tolerance(seed, n, 0.5)
    truth = definitional_adjacency(rep)
    traps = trapezoids_from_tolerance(rep)
    for Tu in traps:
        for Tv in traps:
            if Tu.bounded and not Tv.bounded:
                assert trap_adjacent(Tu, Tv) == truth[frozenset((Tu.id, Tv.id))]
                if Tu.d < Tv.a:
                    assert not trap_adjacent(Tu, Tv)


@given(seeds, st.integers(1, 10), st.sampled_from([0.3, 0.6]))
def test_canonicalize_preserves_graph(seed, n, frac):
    rep = generate_shadow(seed, n, frac)
    c = canonicalize(rep)
    assert adjacency_matrix(c) == adjacency_matrix(rep)
    assert canonicalize(c) == c
    assert is_canonical(c)


@given(seeds, st.integers(2, 10))
def test_hovering_neighbourhood_containment(seed, n):
    rep = canonicalize(generate_shadow(seed, n, 0.6))
    nb, hs = neighbor_sets(rep), hovering_sets(rep)
    for v, hov in hs.items():
        assert any(not rep.is_point(u) for u in hov)
        for u in hov:
            assert nb[v] - {u} <= nb[u]


def test_shadow_from_trapezoids_delta():
    traps = [Trapezoid("a", 0, 2, 1, 3, True), Trapezoid("b", 5, 5, 9, 9, False)]
    rep = shadow_from_trapezoids(traps)
    assert rep.delta == 9
    assert dict(rep.points)["b"] == Point(5, 5)
    assert dict(rep.segments)["a"] == Segment(Point(0, 8), Point(2, 8))


def test_perturbation_breaks_ties_and_keeps_graph():
    rep = ToleranceRepresentation((TV("a", 0, 4, 1), TV("b", 4, 8, 2), TV("c", 0, 6, 9)))
    out = perturb_tolerance(rep)
    assert definitional_adjacency(out) == definitional_adjacency(rep)
    sh = tolerance_to_shadow_of(out.vertices)
    assert not validate_shadow(sh)
