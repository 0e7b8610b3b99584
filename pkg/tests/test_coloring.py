import pytest

from maxatsp.coloring import (ColoringFailed, DeadEnd, Uncolorable, check_coloring,
                              class_edges, class_weights, color7, color_multigraph,
                              decompose, kempe_color, path_color)
from maxatsp.coloring.gadgets import cycle_with_rays
from maxatsp.coloring.search import SearchLimit

TRI_OK = {(0, 1): 14, (1, 2): 13, (2, 0): 13}
TRI_BAD = {(0, 1): 14, (1, 2): 14, (2, 0): 13}


# -- checker -----------------------------------------------------------------

def test_checker_accepts_single_edge():
    assert check_coloring({(0, 1): 3}, {(0, 1): {1, 2, 3}}) is None


def test_checker_two_cycle_in_one_class():
    v = check_coloring({(0, 1): 1, (1, 0): 1}, {(0, 1): {5}, (1, 0): {5}})
    assert v.kind == "cycle" and v.color == 5


def test_checker_in_degree():
    v = check_coloring({(0, 2): 1, (1, 2): 1}, {(0, 2): {1}, (1, 2): {1}})
    assert v.kind == "in-degree" and v.where == (2,)


def test_checker_out_degree():
    v = check_coloring({(0, 1): 1, (0, 2): 1}, {(0, 1): {4}, (0, 2): {4}})
    assert v.kind == "out-degree"


def test_checker_multiplicity_and_palette():
    assert check_coloring({(0, 1): 2}, {(0, 1): {1}}).kind == "multiplicity"
    assert check_coloring({(0, 1): 1}, {(0, 1): {21}}).kind == "palette"
    assert check_coloring({(0, 1): 1}, {(0, 1): {1}, (1, 2): {2}}).kind == "unknown-edge"


def test_checker_partial():
    assert check_coloring({(0, 1): 2}, {(0, 1): {1}}, partial=True) is None


def test_class_helpers():
    col = {(0, 1): {1, 2}, (1, 2): {2}}
    assert class_edges(col, 2) == [(0, 1), (1, 2)]
    ws = class_weights(col, {(0, 1): 5, (1, 2): 7}, palette=3)
    assert ws == [5, 12, 0]


# -- exact search ------------------------------------------------------------

def test_search_two_cycle_limit():
    col, _ = path_color({(0, 1): 10, (1, 0): 10})
    assert check_coloring({(0, 1): 10, (1, 0): 10}, col) is None
    with pytest.raises(Uncolorable):
        path_color({(0, 1): 11, (1, 0): 10})


def test_search_triangle_limit():
    col, _ = path_color(TRI_OK)
    assert check_coloring(TRI_OK, col) is None
    with pytest.raises(Uncolorable):
        path_color(TRI_BAD)


def test_search_gadgets():
    m4, f4 = cycle_with_rays(4)
    with pytest.raises(Uncolorable):
        path_color(m4, f4)
    m6, f6 = cycle_with_rays(6)
    col, _ = path_color(m6, f6)
    assert check_coloring(m6, col) is None
    for e, cs in f6.items():
        assert set(col[e]) == set(cs)


def test_search_gadget_with_shared_ray_colors():
    # out-rays reusing the in-ray colors free up the cycle
    m, f = cycle_with_rays(4, out_overrides={0: {1, 2, 3, 4}})
    col, _ = path_color(m, f)
    assert check_coloring(m, col) is None


def test_search_partial_precoloring_kept():
    mult = {(0, 1): 3, (1, 2): 3}
    col, _ = path_color(mult, {(0, 1): {7}})
    assert 7 in col[(0, 1)] and check_coloring(mult, col) is None


def test_search_node_limit():
    m, f = cycle_with_rays(8)
    with pytest.raises(SearchLimit):
        path_color(m, f, node_limit=1)


# -- heuristics --------------------------------------------------------------

def test_kempe_valid_or_none():
    mult = {(i, (i + 1) % 4): 14 for i in range(4)}
    col = kempe_color(mult, seed=1)
    assert col is not None and check_coloring(mult, col) is None
    for seed in range(3):
        col = kempe_color(TRI_BAD, seed=seed, steps=500)
        assert col is None


def test_kempe_respects_fixed():
    m, f = cycle_with_rays(6)
    col = kempe_color(m, f, seed=0)
    if col is not None:
        assert check_coloring(m, col) is None
        assert all(set(col[e]) == set(cs) for e, cs in f.items())


def test_color7_cycle_and_path():
    mult = {(0, 1): 14, (1, 2): 14, (2, 0): 4, (1, 0): 4, (3, 4): 14, (4, 3): 4, (2, 3): 5}
    col, ledger, order = color7(mult, [(0, 1, 2), (3, 4)], [])
    assert check_coloring(mult, col) is None
    assert sorted(order) == [0, 1]
    assert set(ledger.safe) == set(mult)


def test_color7_dead_end_on_uncolorable():
    with pytest.raises(DeadEnd):
        color7(TRI_BAD, [(0, 1, 2)], [])


# -- engine ------------------------------------------------------------------

def test_decompose():
    col = decompose(TRI_OK)
    assert col is not None and check_coloring(TRI_OK, col) is None
    assert decompose(TRI_BAD) is None


def test_engine_routes():
    res = color_multigraph(TRI_OK, cycles=[(0, 1, 2)])
    assert res.route == "color7" and check_coloring(TRI_OK, res.coloring) is None
    assert res.attempts[-1] == ("color7", "ok")
    with pytest.raises(Uncolorable):
        color_multigraph(TRI_BAD, cycles=[(0, 1, 2)])


def test_engine_without_structure():
    mult = {(0, 1): 20, (1, 2): 20, (2, 3): 20}
    res = color_multigraph(mult)
    assert check_coloring(mult, res.coloring) is None


def test_coloring_failed_is_runtime_error():
    assert issubclass(ColoringFailed, RuntimeError)
