"""Matching engines: assignment, weighted perfect matching, rank-maximal.

The blossom work is delegated to networkx, which runs with exact integer
arithmetic when all weights are integers; ties are broken deterministically
by folding a lexicographic preference into low-order bits of the weights.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

import networkx as nx
import numpy as np
from scipy.optimize import linear_sum_assignment

from .graph import CycleCover, WeightedDigraph


class InfeasibleMatching(ValueError):
    """No perfect matching exists."""


@dataclass(frozen=True)
class MatchingInstance:
    vertices: tuple
    edges: tuple  # (a, b, weight)
    bipartition: tuple | None = None

    def __post_init__(self):
        seen = set()
        vs = set(self.vertices)
        for a, b, _ in self.edges:
            if a == b:
                raise ValueError("self-loop in matching instance")
            if a not in vs or b not in vs:
                raise ValueError(f"edge ({a!r},{b!r}) has an unknown endpoint")
            key = frozenset((a, b))
            if key in seen:
                raise ValueError(f"parallel edge ({a!r},{b!r})")
            seen.add(key)


@dataclass(frozen=True)
class Matching:
    pairs: frozenset
    weight: int

    def mate(self) -> dict:
        m = {}
        for a, b in self.pairs:
            m[a] = b
            m[b] = a
        return m


def _key(v: Hashable):
    return v if isinstance(v, tuple) else (v,)


def _norm(a, b):
    return (a, b) if _key(a) <= _key(b) else (b, a)


def assignment_max(G: WeightedDigraph) -> Matching:
    """Max-weight perfect matching of ``{u_out} x {v_in}`` without ``(u_out, u_in)``.

    Pairs are returned as ``(u, v)`` meaning the arc ``u -> v``.
    """
    w = G.w.astype(np.float64)
    forbid = float(G.w.sum() + 1) * (G.n + 1)
    np.fill_diagonal(w, -forbid)
    rows, cols = linear_sum_assignment(w, maximize=True)
    pairs = frozenset((int(r), int(c)) for r, c in zip(rows, cols))
    if any(r == c for r, c in pairs):
        raise InfeasibleMatching("assignment used a diagonal entry")
    return Matching(pairs, G.weight(pairs))


def max_cycle_cover(G: WeightedDigraph) -> CycleCover:
    M = assignment_max(G)
    succ = [0] * G.n
    for u, v in M.pairs:
        succ[u] = v
    return CycleCover(tuple(succ))


def _weighted_nx(I: MatchingInstance, weights: Sequence[int]) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(I.vertices)
    for (a, b, _), x in zip(I.edges, weights):
        g.add_edge(a, b, weight=x)
    return g


def _tiebreak_order(I: MatchingInstance) -> list[int]:
    return sorted(range(len(I.edges)), key=lambda i: (_key(_norm(*I.edges[i][:2])[0]),
                                                      _key(_norm(*I.edges[i][:2])[1])))


def _tiebroken(I: MatchingInstance, primary: Sequence[int]) -> list[int]:
    m = len(I.edges)
    order = _tiebreak_order(I)
    bonus = [0] * m
    for rank, i in enumerate(order):
        bonus[i] = 1 << (m - 1 - rank)
    return [(p << m) + bonus[i] for i, p in enumerate(primary)]


def _pairs_of(mate: Iterable) -> frozenset:
    return frozenset(_norm(a, b) for a, b in mate)


def blossom_max_perfect(I: MatchingInstance) -> Matching:
    """Maximum-weight perfect matching; ties go to the lexicographically smallest pair set."""
    n = len(I.vertices)
    if n % 2:
        raise InfeasibleMatching("odd number of vertices")
    if n == 0:
        return Matching(frozenset(), 0)
    ws = [int(x) for _, _, x in I.edges]
    shift = 1 - min(ws) if ws else 0
    # every perfect matching has n/2 edges, so the shift does not change the optimum
    primary = [x + shift for x in ws]
    g = _weighted_nx(I, _tiebroken(I, primary))
    mate = nx.max_weight_matching(g, maxcardinality=True)
    if 2 * len(mate) != n:
        raise InfeasibleMatching("no perfect matching")
    pairs = _pairs_of(mate)
    wmap = {frozenset((a, b)): x for a, b, x in I.edges}
    return Matching(pairs, sum(wmap[frozenset(p)] for p in pairs))


def max_weight_matching(I: MatchingInstance) -> Matching:
    """Maximum-weight (not necessarily perfect) matching, same tie rule."""
    ws = [int(x) for _, _, x in I.edges]
    g = _weighted_nx(I, _tiebroken(I, ws))
    pairs = _pairs_of(nx.max_weight_matching(g, maxcardinality=False))
    wmap = {frozenset((a, b)): x for a, b, x in I.edges}
    return Matching(pairs, sum(wmap[frozenset(p)] for p in pairs))


def rank_maximal(edges: Sequence[tuple[Hashable, Hashable, int]]) -> Matching:
    """Rank-maximal matching of a bipartite graph given as ``(left, right, rank)``.

    Rank ``i`` of ``k`` gets weight ``M**(k-i)`` with ``M = |E| + 1``, so
    one better-ranked edge outweighs any number of worse-ranked ones.
    The returned weight is the scaled objective.
    """
    if not edges:
        return Matching(frozenset(), 0)
    if any(r < 1 for _, _, r in edges):
        raise ValueError("ranks must be positive")
    k = max(r for _, _, r in edges)
    big = len(edges) + 1
    verts = []
    seen = set()
    for a, b, _ in edges:
        for v in (("L", a), ("R", b)):
            if v not in seen:
                seen.add(v)
                verts.append(v)
    I = MatchingInstance(tuple(verts), tuple((("L", a), ("R", b), big ** (k - r))
                                             for a, b, r in edges))
    M = max_weight_matching(I)
    pairs = set()
    for x, y in M.pairs:
        if x[0] == "R":
            x, y = y, x
        pairs.add((x[1], y[1]))
    return Matching(frozenset(pairs), M.weight)


def signature(pairs: Iterable, ranks: dict, k: int) -> tuple[int, ...]:
    """Rank signature ``(#rank-1, #rank-2, ...)`` of a matching."""
    sig = [0] * k
    for p in pairs:
        sig[ranks[p] - 1] += 1
    return tuple(sig)
