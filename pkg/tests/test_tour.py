from fractions import Fraction

import pytest

from maxatsp.coloring import check_coloring
from maxatsp.graph import CycleCover, random_instance
from maxatsp.oracle import held_karp_opt
from maxatsp.tour import (BRANCHES, ContractViolation, PathSet, RatioReport,
                          fast_path_extract, heaviest_class_paths, patch_to_tour, solve)

from helpers import digraph


def test_fast_path_drops_lightest_edge():
    G = digraph({(0, 1): 1, (1, 2): 1, (2, 3): 1, (3, 0): 7}, 4)
    P = fast_path_extract(CycleCover.from_cycles([(0, 1, 2, 3)]), G)
    # first lightest edge in cycle order is (0, 1)
    assert P.paths == ((1, 2, 3, 0),)
    assert P.weight == 9 * G.scale


def test_fast_path_light_triangle():
    # edge 1 is at most 3/10 of the triangle, so the triangle is not hard
    G = digraph({(0, 1): 6, (1, 2): 3, (2, 0): 1}, 3)
    P = fast_path_extract(CycleCover.from_cycles([(0, 1, 2)]), G)
    assert P.paths == ((0, 1, 2),) and P.weight == 9 * G.scale


def test_fast_path_refuses_hard_cycle():
    G = digraph({(0, 1): 4, (1, 2): 4, (2, 0): 4}, 3)
    with pytest.raises(ContractViolation):
        fast_path_extract(CycleCover.from_cycles([(0, 1, 2)]), G)


def test_pathset_from_edges():
    G = digraph({(0, 1): 2, (1, 2): 3, (3, 4): 5}, 5)
    P = PathSet.from_edges([(3, 4), (0, 1), (1, 2)], G)
    assert P.paths == ((0, 1, 2), (3, 4)) and P.weight == 10 * G.scale
    with pytest.raises(ValueError):
        PathSet.from_edges([(0, 1), (1, 0)], G)
    with pytest.raises(ValueError):
        PathSet.from_edges([(0, 1), (0, 2)], G)


def test_heaviest_class_tie_goes_to_lowest_color():
    G = digraph({(0, 1): 4}, 2)
    col = {(0, 1): {3, 2}}
    k, P = heaviest_class_paths(col, {(0, 1): G(0, 1)}, G)
    assert k == 2 and P.paths == ((0, 1),)


def test_patch_joins_heaviest_connections():
    G = digraph({(0, 1): 9, (2, 3): 9, (1, 2): 5, (3, 0): 4}, 5)
    T = patch_to_tour(PathSet.of([(0, 1), (2, 3)], G), G)
    assert sorted(T.order) == [0, 1, 2, 3, 4]
    assert T.weight == (9 + 9 + 5) * G.scale


def test_solve_two_vertices():
    G = digraph({(0, 1): 3, (1, 0): 4}, 2)
    tour, rep = solve(G)
    assert tour.weight == 7 * G.scale == rep.opt
    assert rep.branch == "fast-path" and rep.ratio == 1


def test_solve_single_cycle_cover():
    G = digraph({(0, 1): 9, (1, 2): 9, (2, 3): 9, (3, 0): 9}, 4, default=1)
    tour, rep = solve(G)
    assert tour.weight == rep.opt and rep.branch == "fast-path"


def test_solve_full_pipeline():
    G = random_instance(8, 100, 2, "two-cycle-heavy")
    tour, rep = solve(G, "tc8")
    assert rep.branch in ("full-pipeline", "fallback")
    assert rep.meets_bound() and 10 * tour.weight >= 7 * held_karp_opt(G)
    plan, col = rep.details["plan"], rep.details["coloring"]
    assert check_coloring(plan.mult.mult, col) is None
    assert 20 * rep.class_weight >= rep.g1_weight
    text = rep.format(G)
    assert "branch=" in text and "instance=tc8" in text and "ratio=" in text


def test_solve_without_oracle():
    G = random_instance(6, 100, 1, "uniform")
    _, rep = solve(G, oracle=False)
    assert rep.opt is None and rep.ratio is None and rep.meets_bound() is None
    assert rep.branch in BRANCHES


def test_report_ratio_exact():
    rep = RatioReport("x", 4, 7, 10, "fast-path")
    assert rep.ratio == Fraction(7, 10) and rep.meets_bound()
    rep = RatioReport("x", 4, 69, 100, "fast-path")
    assert not rep.meets_bound()
    assert RatioReport("x", 4, 0, 0, "fast-path").ratio == 1


@pytest.mark.parametrize("family", ["uniform", "two-cycle-heavy", "triangle-heavy"])
def test_solve_small_sweep(family):
    for seed in range(15):
        G = random_instance(4 + seed % 7, 100, seed, family)
        tour, rep = solve(G)
        assert sorted(tour.order) == list(range(G.n))
        assert rep.meets_bound()
