import random

import pytest
from hypothesis import given, strategies as st

from tolshadow.bounded_ds import dominates
from tolshadow.generate import generate_shadow
from tolshadow.geometry import Point, Segment
from tolshadow.model import ShadowRepresentation, neighbor_sets
from tolshadow.oracle import (
    BudgetExceeded,
    brute_min_dominating_set,
    brute_min_set_cover,
    default_budget,
    diagonally_leftmost,
    exact_min_dominating_set,
    exact_min_set_cover,
)


class TestDomination:
    def test_e1(self, e1):
        assert brute_min_dominating_set(e1).sorted_ids() == ["u"]

    def test_empty_pool(self, e1):
        assert not brute_min_dominating_set(e1, pool=[]).feasible

    def test_isolated_end_pair(self):
        rep = ShadowRepresentation(
            points=(("p", Point(0, 0)),),
            segments=(("s", Segment.horizontal_at(5, 6, 3)),),
        )
        sol = brute_min_dominating_set(rep, pool=["s"], end_pair=("s", "s"))
        assert not sol.feasible

    def test_tie_break_is_lexicographic(self, e1):
        sol = brute_min_dominating_set(e1, pool=["u", "v"], targets=["w"])
        assert sol.sorted_ids() == ["u"]

    def test_diagonally_leftmost(self, e1):
        assert diagonally_leftmost(e1, ["u", "v"]) == "u"
        assert diagonally_leftmost(e1, []) is None


class TestBudget:
    def test_refusal(self, e1):
        with pytest.raises(BudgetExceeded):
            brute_min_dominating_set(e1, budget=2)
        with pytest.raises(BudgetExceeded):
            brute_min_set_cover([1], [[1]] * 5, budget=4)

    def test_env_override(self, monkeypatch):
        monkeypatch.setenv("TOLSHADOW_ORACLE_BUDGET", "3")
        assert default_budget() == 3
        monkeypatch.setenv("TOLSHADOW_ORACLE_BUDGET", "many")
        with pytest.raises(ValueError):
            default_budget()
        monkeypatch.delenv("TOLSHADOW_ORACLE_BUDGET")
        assert default_budget() == 14


class TestSetCover:
    def test_single(self):
        assert brute_min_set_cover(["a"], [["a"]]) == (1, (0,))

    def test_uncoverable(self):
        assert brute_min_set_cover(["a", "b"], [["a"]]) is None
        assert exact_min_set_cover(["a", "b"], [["a"]]) is None

    def test_branch_and_bound_matches(self):
        rng = random.Random(5)
        for _ in range(200):
            universe = list(range(rng.randint(1, 8)))
            sets = [rng.sample(universe, rng.randint(1, len(universe))) for _ in range(rng.randint(1, 8))]
            brute = brute_min_set_cover(universe, sets)
            exact = exact_min_set_cover(universe, sets)
            assert (brute is None) == (exact is None)
            if brute:
                assert brute[0] == exact[0]
                assert set(universe) <= set().union(*(sets[c] for c in exact[1]))


@given(st.integers(0, 10**6), st.integers(1, 9), st.sampled_from([0.2, 0.5]))
def test_self_consistency(seed, n, frac):
    rep = generate_shadow(seed, n, frac)
    nb = neighbor_sets(rep)
    sol = brute_min_dominating_set(rep, nb=nb)
    Z = set(sol.ids)
    assert dominates(rep, Z, nb=nb)
    for v in rep.ids:
        assert dominates(rep, Z | {v}, nb=nb)
    for v in Z:
        assert not dominates(rep, Z - {v}, nb=nb)
    assert exact_min_dominating_set(rep, nb=nb).size == sol.size
