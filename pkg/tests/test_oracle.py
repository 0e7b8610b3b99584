import pytest

from maxatsp.graph import cycle_edges, random_instance
from maxatsp.matching import max_cycle_cover
from maxatsp.oracle import (OracleRefused, all_matchings, brute_force_opt, held_karp_opt,
                            perfect_matchings)

from helpers import digraph


def test_triangle_example():
    G = digraph({(0, 1): 5, (1, 2): 5, (2, 0): 5}, 3, default=1)
    assert held_karp_opt(G) == 15 * G.scale


def test_all_zero():
    assert held_karp_opt(digraph({}, 6)) == 0


@pytest.mark.parametrize("seed", range(15))
def test_matches_brute_force(seed):
    G = random_instance(2 + seed % 7, 100, seed, "triangle-heavy")
    assert held_karp_opt(G) == brute_force_opt(G)


def test_with_tour_is_consistent():
    for seed in range(6):
        G = random_instance(7, 100, seed)
        w, order = held_karp_opt(G, with_tour=True)
        assert sorted(order) == list(range(7))
        assert G.weight(cycle_edges(order)) == w


def test_below_cycle_cover():
    for seed in range(10):
        G = random_instance(8, 100, seed, "two-cycle-heavy")
        assert held_karp_opt(G) <= max_cycle_cover(G).weight(G)


def test_cap():
    with pytest.raises(OracleRefused):
        held_karp_opt(random_instance(6, 10, 0), cap=5)


def test_matching_enumerators():
    E = [("a", "b", 1), ("c", "d", 1), ("a", "c", 1)]
    assert len(perfect_matchings("abcd", E)) == 1
    assert len(all_matchings(E)) == 5  # {}, 3 singles, {ab, cd}
