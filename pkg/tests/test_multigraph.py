import numpy as np
import pytest

from maxatsp.analysis import classify
from maxatsp.coloring import check_coloring, color_multigraph
from maxatsp.graph import WeightedDigraph, random_instance
from maxatsp.multigraph import (_pair_component, base_multiplicities, build_g1,
                                reoptimize, strange_2cycles)
from maxatsp.relaxed import compute_c1, preprocess_alternating

from helpers import digraph


def _plan(G):
    cls = classify(G)
    C1, _ = compute_c1(G, cls)
    C1 = preprocess_alternating(C1, cls)
    return build_g1(G, cls, C1)


def test_base_multiplicities_overlap():
    G = digraph({(0, 1): 9, (1, 2): 9, (2, 3): 9, (3, 0): 9}, 4, default=1)
    cls = classify(G)
    C1, _ = compute_c1(G, cls)
    m = base_multiplicities(set(cls.cmax.edges), C1)
    assert set(m.values()) == {14}
    plan = build_g1(G, cls, C1)
    assert plan.weight == 14 * 4 * 9 * G.scale
    assert plan.bound_ok()


def test_base_multiplicities_disjoint():
    # C_max is the 4-cycle; force C1 to differ by handing a different cover
    G = digraph({(0, 1): 9, (1, 2): 9, (2, 3): 9, (3, 0): 9}, 4, default=1)
    cls = classify(G)
    C1, _ = compute_c1(G, cls)
    C1.full = frozenset({(0, 2), (2, 0), (1, 3), (3, 1)})
    m = base_multiplicities({(0, 1), (1, 2)}, C1)
    assert m[(0, 1)] == 4 and m[(0, 2)] == 10


@pytest.mark.parametrize("family", ["triangle-heavy", "two-cycle-heavy", "uniform"])
def test_random_builds(family):
    for seed in range(12):
        G = random_instance(4 + seed % 6, 100, seed, family)
        plan = _plan(G)
        assert plan.bound_ok(), (family, seed)
        assert not plan.mult.degree_violations()
        assert all(0 < k <= 20 for k in plan.mult.mult.values())
        X = plan.exchange
        assert X.e1_ok(G) and X.f2_ok(G)
        lines = plan.describe().splitlines()
        assert lines[0].startswith("weight ") and lines[1].startswith("target ")
        assert sum(1 for l in lines if l.startswith("edge ")) == len(plan.mult.mult)


def test_strange_2cycles_are_cmax_edges():
    for seed in range(20):
        G = random_instance(6 + seed % 5, 100, seed, "two-cycle-heavy")
        cls = classify(G)
        C1, _ = compute_c1(G, cls)
        for e in strange_2cycles(cls, C1):
            assert e in cls.cmax.edges


def test_pairing_prefers_shared_2cycle():
    # path N, N', N: the N' edge can reach either N edge
    c1, c2 = (1, 5), (3, 2)
    comp = [("N", (c1, 3)), ("P", (c1, 4)), ("N", (c2, 4))]
    wprime = {(c1, 3): 1350, (c1, 4): 1350, (c2, 4): 1190}
    assert _pair_component(comp, wprime) == [((c1, 4), (c1, 3), "c")]


def test_pairing_path_from_n_end():
    # N, N', N, N': walking from the N end must still pair both N' edges
    comp = [("N", ("a", 1)), ("P", ("a", 2)), ("N", ("b", 2)), ("P", ("b", 3))]
    wprime = {e: 7 for _, e in comp}
    pairs = _pair_component(comp, wprime)
    assert {e for e, _, _ in pairs} == {("a", 2), ("b", 3)}
    assert len({f for _, f, _ in pairs}) == 2


# an R' triangle next to two R candidates with different w'
F2_CASE = [[0, 40, 24, 15, 25, 3, 100], [56, 0, 6, 48, 19, 57, 23],
           [82, 0, 0, 86, 31, 40, 59], [85, 62, 53, 0, 8, 9, 36],
           [76, 72, 32, 34, 0, 40, 96], [20, 96, 5, 44, 41, 0, 33],
           [100, 53, 74, 38, 64, 60, 0]]
# a local-opt site that already saturates the F2 edge
SATURATED = [[0, 74, 0, 34, 51], [88, 0, 25, 28, 48], [19, 57, 0, 36, 80],
             [80, 28, 29, 0, 58], [82, 11, 47, 11, 0]]


def test_f2_inequality_regression():
    G = WeightedDigraph.from_unscaled(np.array(F2_CASE))
    plan = _plan(G)
    X = plan.exchange
    assert X.F2 and X.rescuers
    assert X.f2_ok(G)
    assert plan.bound_ok()


def test_saturated_exchange_edge_skipped():
    G = WeightedDigraph.from_unscaled(np.array(SATURATED))
    plan = _plan(G)
    assert any("saturated" in n for n in plan.notes)
    assert all(k <= 20 for k in plan.mult.mult.values())
    assert plan.bound_ok()


def test_reoptimize_keeps_outside_edges():
    G = random_instance(8, 100, 3, "triangle-heavy")
    plan = _plan(G)
    free = {e for s in plan.sites for e in s.owned}
    free |= set(plan.exchange.E1) | set(plan.exchange.F1) | set(plan.exchange.F2)
    new = reoptimize(plan)
    assert new is not None
    for e, k in plan.mult.mult.items():
        if e not in free:
            assert new.mult.mult.get(e) == k
    assert not new.mult.degree_violations()
    res = color_multigraph(new.mult.mult, seed=0)
    assert check_coloring(new.mult.mult, res.coloring) is None
