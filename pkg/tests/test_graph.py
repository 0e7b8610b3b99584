import numpy as np
import pytest

from maxatsp.graph import (FAMILIES, SCALE, CycleCover, HalfEdge, InstanceError, Multigraph,
                           Tour, WeightedDigraph, cover_weight, load_instance, random_instance,
                           save_instance)


MATRIX = """3
- 5 1
1 - 5
5 1 -
"""


def test_load_matrix_scales_weights():
    G = load_instance(MATRIX)
    assert G.n == 3 and G.scale == SCALE
    assert G(0, 1) == 5 * SCALE and G(1, 0) == SCALE


def test_load_edge_list_keeps_labels():
    text = "\n".join(f"{u} {v} {u * 10 + v}" for u in (3, 7, 9) for v in (3, 7, 9) if u != v)
    G = load_instance(text)
    assert G.labels == (3, 7, 9)
    assert G(0, 2) == 39 * SCALE
    assert load_instance(save_instance(G)) == G


@pytest.mark.parametrize("text", [
    "3\n- 1 2\n1 - 2\n",  # too few rows
    "2\n- -1\n1 -\n",  # negative
    "2\n0 1\n1 -\n",  # diagonal not '-'
    "1 2 3\n2 1 3\n1 2 4\n",  # duplicate arc
    "1 2 3\n",  # missing reverse arc
    "",
])
def test_load_rejects(text):
    with pytest.raises(InstanceError):
        load_instance(text)


def test_round_trip_random():
    for seed in range(5):
        G = random_instance(6, 100, seed)
        assert load_instance(save_instance(G)) == G


def test_random_instance_deterministic_and_in_range():
    for fam in FAMILIES:
        a = random_instance(9, 100, 3, fam)
        b = random_instance(9, 100, 3, fam)
        assert a == b
        assert a.w.min() >= 0 and a.w.max() <= 100 * SCALE
    assert random_instance(9, 100, 3, "uniform") != random_instance(9, 100, 4, "uniform")
    with pytest.raises(InstanceError):
        random_instance(5, 10, 0, "nope")


def test_cycle_cover_cycles_and_weight():
    G = load_instance(MATRIX)
    C = CycleCover((1, 2, 0))
    assert C.cycles == ((0, 1, 2),)
    assert cover_weight(C, G) == 15 * SCALE
    C2 = CycleCover.from_cycles([(0, 1), (2, 3)])
    assert C2.succ == (1, 0, 3, 2)
    with pytest.raises(ValueError):
        CycleCover((0, 1))


def test_cover_weight_additive():
    G = random_instance(6, 50, 1)
    C = CycleCover.from_cycles([(0, 1, 2), (3, 4, 5)])
    sub = [sum(G(v, c[(i + 1) % len(c)]) for i, v in enumerate(c)) for c in C.cycles]
    assert cover_weight(C, G) == sum(sub)


def test_half_edge_vertex():
    assert HalfEdge((1, 2), "tail", 3).vertex == 1
    assert HalfEdge((1, 2), "head", 3).vertex == 2
    with pytest.raises(ValueError):
        HalfEdge((1, 2), "middle", 3)


def test_multigraph_bounds_and_degrees():
    M = Multigraph()
    M.set((0, 1), 15, 2)
    M.add((0, 2), 6, 1)
    assert M.total_weight() == 36
    assert M.degree_violations() == [("out", 0, 21)]
    with pytest.raises(ValueError):
        M.set((1, 2), 21)
    M.set((0, 2), 0)
    assert (0, 2) not in M.mult


def test_tour():
    G = load_instance(MATRIX)
    T = Tour.of((0, 1, 2), G)
    assert T.weight == 15 * SCALE
    assert T.format(G) == "1 2 3\n15\n"
    with pytest.raises(ValueError):
        Tour.of((0, 1), G)


def test_scaling_keeps_classification_and_tour():
    from maxatsp.tour import solve
    G = random_instance(8, 100, 11, "two-cycle-heavy")
    H = WeightedDigraph(G.w * 3, G.scale)
    t1, r1 = solve(G, oracle=False)
    t2, r2 = solve(H, oracle=False)
    assert t1.order == t2.order
    assert r1.branch == r2.branch
    assert np.array_equal(G.w * 3, H.w)
