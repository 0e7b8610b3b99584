"""Exact oracles: Held-Karp for Max ATSP and brute-force enumerations."""

from __future__ import annotations

from itertools import permutations

import numpy as np

from .graph import WeightedDigraph, cycle_edges

HK_CAP = 15

_NEG = np.iinfo(np.int64).min // 4


class OracleRefused(ValueError):
    """Instance too large for the exact oracle."""


def held_karp_opt(G: WeightedDigraph, cap: int = HK_CAP, with_tour: bool = False):
    """Maximum tour weight by subset dynamic programming over layers of equal popcount."""
    n = G.n
    if n > cap:
        raise OracleRefused(f"n={n} exceeds the oracle cap {cap}")
    if n == 2:
        val = G(0, 1) + G(1, 0)
        return (val, (0, 1)) if with_tour else val
    m = n - 1
    W = G.w[1:, 1:].astype(np.int64)
    size = 1 << m
    dp = np.full((size, m), _NEG, dtype=np.int64)
    arg = np.full((size, m), -1, dtype=np.int64) if with_tour else None
    for j in range(m):
        dp[1 << j, j] = G(0, j + 1)
    masks = np.arange(size, dtype=np.int64)
    pop = np.array([bin(x).count("1") for x in range(size)])
    for k in range(2, m + 1):
        layer = masks[pop == k]
        for j in range(m):
            sel = layer[(layer >> j) & 1 == 1]
            prev = sel ^ (1 << j)
            cand = dp[prev] + W[:, j][None, :]
            cand[dp[prev] == _NEG] = _NEG
            dp[sel, j] = cand.max(axis=1)
            if with_tour:
                arg[sel, j] = cand.argmax(axis=1)
    full = size - 1
    closing = dp[full] + G.w[1:, 0]
    best = int(closing.max())
    if not with_tour:
        return best
    j = int(closing.argmax())
    order = []
    mask = full
    while j >= 0:
        order.append(j + 1)
        pj = int(arg[mask, j]) if bin(mask).count("1") > 1 else -1
        mask ^= 1 << j
        j = pj
    tour = (0,) + tuple(reversed(order))
    return best, tour


def brute_force_opt(G: WeightedDigraph) -> int:
    """Maximum tour weight by enumerating all (n-1)! tours."""
    best = None
    for rest in permutations(range(1, G.n)):
        w = G.weight(cycle_edges((0,) + rest))
        best = w if best is None or w > best else best
    return best


def brute_force_cover(G: WeightedDigraph) -> int:
    """Maximum cycle cover weight over all fixed-point-free permutations."""
    best = None
    for perm in permutations(range(G.n)):
        if any(perm[i] == i for i in range(G.n)):
            continue
        w = sum(G(i, perm[i]) for i in range(G.n))
        best = w if best is None or w > best else best
    return best


def perfect_matchings(vertices, edges):
    """All perfect matchings of a small general graph as lists of edge indices."""
    adj = {}
    for i, (a, b, _) in enumerate(edges):
        adj.setdefault(a, []).append((b, i))
        adj.setdefault(b, []).append((a, i))
    out = []

    def rec(free, chosen):
        if not free:
            out.append(list(chosen))
            return
        v = min(free, key=repr)
        for u, i in adj.get(v, []):
            if u in free and u != v:
                chosen.append(i)
                rec(free - {u, v}, chosen)
                chosen.pop()

    rec(frozenset(vertices), [])
    return out


def all_matchings(edges):
    """Every matching (including the empty one) of a small edge list, as index lists."""
    out = []
    m = len(edges)

    def rec(i, used, chosen):
        if i == m:
            out.append(list(chosen))
            return
        rec(i + 1, used, chosen)
        a, b = edges[i][0], edges[i][1]
        if a not in used and b not in used:
            chosen.append(i)
            rec(i + 1, used | {a, b}, chosen)
            chosen.pop()

    rec(0, frozenset(), [])
    return out
