import random

import pytest

from maxatsp.graph import random_instance
from maxatsp.matching import (InfeasibleMatching, MatchingInstance, assignment_max,
                              blossom_max_perfect, max_cycle_cover, rank_maximal, signature)
from maxatsp.oracle import brute_force_cover, perfect_matchings

from helpers import digraph


def test_assignment_two_vertices():
    G = digraph({(0, 1): 3, (1, 0): 4}, 2)
    M = assignment_max(G)
    assert M.pairs == {(0, 1), (1, 0)}
    assert M.weight == 7 * G.scale


def test_assignment_all_zero():
    G = digraph({}, 5)
    assert assignment_max(G).weight == 0


@pytest.mark.parametrize("seed", range(12))
def test_assignment_matches_brute_force(seed):
    G = random_instance(3 + seed % 6, 100, seed)
    assert assignment_max(G).weight == brute_force_cover(G)
    assert max_cycle_cover(G).weight(G) == brute_force_cover(G)


def test_blossom_single_edge():
    I = MatchingInstance(("a", "b"), (("a", "b", 40),))
    assert blossom_max_perfect(I).weight == 40


def test_blossom_k4():
    E = (("a", "b", 10), ("c", "d", 10), ("a", "c", 1), ("b", "d", 1), ("a", "d", 1), ("b", "c", 1))
    M = blossom_max_perfect(MatchingInstance(("a", "b", "c", "d"), E))
    assert M.pairs == {("a", "b"), ("c", "d")} and M.weight == 20


def test_blossom_odd_and_infeasible():
    with pytest.raises(InfeasibleMatching):
        blossom_max_perfect(MatchingInstance(("a", "b", "c"), (("a", "b", 1),)))
    with pytest.raises(InfeasibleMatching):
        blossom_max_perfect(MatchingInstance(("a", "b", "c", "d"), (("a", "b", 1), ("a", "c", 1))))


def test_blossom_negative_weights_still_perfect():
    E = (("a", "b", -5), ("c", "d", -5), ("a", "c", 100))
    M = blossom_max_perfect(MatchingInstance(("a", "b", "c", "d"), E))
    assert M.weight == -10


def test_blossom_ties_lexicographic():
    E = (("a", "b", 1), ("c", "d", 1), ("a", "c", 1), ("b", "d", 1))
    M = blossom_max_perfect(MatchingInstance(("a", "b", "c", "d"), E))
    assert M.pairs == {("a", "b"), ("c", "d")}


def test_blossom_against_enumeration_small():
    rng = random.Random(3)
    for _ in range(40):
        vs = tuple(range(rng.choice([2, 4, 6, 8])))
        E = tuple((a, b, rng.randint(-5, 30)) for a in vs for b in vs if a < b and rng.random() < 0.7)
        pms = perfect_matchings(vs, E)
        if not pms:
            continue
        best = max(sum(E[i][2] for i in pm) for pm in pms)
        assert blossom_max_perfect(MatchingInstance(vs, E)).weight == best


def test_instance_rejects_loops_and_parallels():
    with pytest.raises(ValueError):
        MatchingInstance(("a",), (("a", "a", 1),))
    with pytest.raises(ValueError):
        MatchingInstance(("a", "b"), (("a", "b", 1), ("b", "a", 2)))


def test_rank_maximal_examples():
    assert rank_maximal([("c", "p", 1)]).pairs == {("c", "p")}
    E = [("c1", "p1", 1), ("c1", "p2", 2), ("c2", "p2", 1)]
    assert rank_maximal(E).pairs == {("c1", "p1"), ("c2", "p2")}
    star = [("c", "x", 3), ("c", "y", 2), ("c", "z", 1)]
    assert rank_maximal(star).pairs == {("c", "z")}
    assert rank_maximal([]).pairs == frozenset()


def test_rank_maximal_prefers_rank_over_size():
    # one rank-1 edge beats two rank-2 edges
    E = [("c1", "p1", 2), ("c1", "p2", 1), ("c2", "p2", 2)]
    ranks = {(a, b): r for a, b, r in E}
    assert signature(rank_maximal(E).pairs, ranks, 2) == (1, 0)
