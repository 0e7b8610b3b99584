"""Exact backtracking search for path-20-colorings.

Each edge ``e`` must receive ``mult(e)`` distinct colors so that every
color class is a union of vertex-disjoint directed paths.  The search
branches on "color ``k`` on edge ``e``: yes / no", always on the edge
with the least slack (available colors minus colors still needed).

Pruning:

* forced assignment when an edge's slack is zero;
* per-vertex Hall bound on the out- and in-edges;
* short-cycle bound: on a directed cycle of length ``L`` of the support,
  a color can occupy at most ``L - 1`` edges;
* colors not used anywhere yet are interchangeable, so only the lowest
  of them is tried and excluding it excludes all of them.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field

import networkx as nx

from .checker import PALETTE

NODE_LIMIT = 10_000_000
CYCLE_BOUND_LEN = 6


class SearchLimit(RuntimeError):
    """Node limit exhausted before the search finished."""


@dataclass
class Uncolorable(Exception):
    """Proof by exhaustion that no path-coloring extends the given state."""

    edges: dict
    fixed: dict
    nodes: int
    reason: str

    def __str__(self):
        fx = sum(1 for cs in self.fixed.values() if cs)
        return (f"not path-{PALETTE}-colorable: {len(self.edges)} edges, {fx} precolored, "
                f"{self.nodes} nodes explored ({self.reason})")


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass
class SearchStats:
    nodes: int = 0
    forced: int = 0


class PathColorSearch:
    """Search state over a fixed support; colors are bits ``0..palette-1``."""

    def __init__(self, mult: dict, fixed: dict | None = None, palette: int = PALETTE,
                 node_limit: int = NODE_LIMIT, cycle_len: int = CYCLE_BOUND_LEN,
                 allowed: dict | None = None):
        self.palette = palette
        self.full = (1 << palette) - 1
        self.node_limit = node_limit
        self.edge_list = sorted((e for e, k in mult.items() if k > 0), key=repr)
        verts = sorted({x for e in self.edge_list for x in e}, key=repr)
        self.vid = {x: i for i, x in enumerate(verts)}
        nv = len(verts)
        self.U = [self.vid[e[0]] for e in self.edge_list]
        self.V = [self.vid[e[1]] for e in self.edge_list]
        self.need = [mult[e] for e in self.edge_list]
        m = len(self.edge_list)
        self.col = [0] * m
        self.forb = [0] * m
        self.outm = [0] * nv
        self.inm = [0] * nv
        # per color: start of the path ending at x / end of the path starting at x
        self.se = [[-1] * nv for _ in range(palette)]
        self.es = [[-1] * nv for _ in range(palette)]
        self.used = [0] * palette
        self.trail: list = []
        self.stats = SearchStats()
        self.out_edges = [[] for _ in range(nv)]
        self.in_edges = [[] for _ in range(nv)]
        for i in range(m):
            self.out_edges[self.U[i]].append(i)
            self.in_edges[self.V[i]].append(i)
        self.cycles = self._short_cycles(cycle_len)
        index = {e: i for i, e in enumerate(self.edge_list)}
        for e, cs in (allowed or {}).items():
            if e in index:
                mask = sum(1 << (c - 1) for c in cs if 1 <= c <= palette)
                self.forb[index[e]] = self.full & ~mask
        self.fixed_input = {e: set(cs) for e, cs in (fixed or {}).items()}
        for e, cs in (fixed or {}).items():
            if not cs:
                continue
            if e not in mult or mult[e] <= 0:
                raise ValueError(f"precolored edge {e!r} is not in the multigraph")
            i = self.edge_list.index(e)
            for c in sorted(cs):
                k = c - 1
                if not 0 <= k < palette:
                    raise ValueError(f"color {c} outside the palette")
                if not (self.avail(i, honor_forb=False) >> k) & 1 or self.need[i] == 0:
                    raise Uncolorable(dict(mult), self.fixed_input, 0,
                                      f"precoloring of {e!r} with {c} is already invalid")
                self.assign(i, k)
        self.trail.clear()

    def _short_cycles(self, L: int) -> list:
        g = nx.DiGraph()
        idx = {}
        for i, (u, v) in enumerate(zip(self.U, self.V)):
            g.add_edge(u, v)
            idx[(u, v)] = i
        out = []
        for cyc in nx.simple_cycles(g, length_bound=L):
            k = len(cyc)
            out.append([idx[(cyc[j], cyc[(j + 1) % k])] for j in range(k)])
        return out

    # -- state changes (all undone through the trail) --

    def _set(self, arr, i, val):
        self.trail.append((arr, i, arr[i]))
        arr[i] = val

    def assign(self, i: int, k: int):
        u, v = self.U[i], self.V[i]
        bit = 1 << k
        self._set(self.col, i, self.col[i] | bit)
        self._set(self.need, i, self.need[i] - 1)
        self._set(self.outm, u, self.outm[u] | bit)
        self._set(self.inm, v, self.inm[v] | bit)
        self._set(self.used, k, self.used[k] + 1)
        se, es = self.se[k], self.es[k]
        s = se[u] if se[u] >= 0 else u
        t = es[v] if es[v] >= 0 else v
        if u != s:
            self._set(se, u, -1)
        if v != t:
            self._set(es, v, -1)
        self._set(se, t, s)
        self._set(es, s, t)

    def forbid(self, i: int, mask: int):
        self._set(self.forb, i, self.forb[i] | mask)

    def undo(self, mark: int):
        tr = self.trail
        while len(tr) > mark:
            arr, i, old = tr.pop()
            arr[i] = old

    # -- queries --

    def avail(self, i: int, honor_forb: bool = True) -> int:
        u, v = self.U[i], self.V[i]
        a = self.full & ~(self.col[i] | self.outm[u] | self.inm[v])
        if honor_forb:
            a &= ~self.forb[i]
        for k in _bits(a):
            if self.se[k][u] == v:
                a &= ~(1 << k)
        return a

    def pristine(self) -> int:
        p = 0
        for k in range(self.palette):
            if self.used[k] == 0:
                p |= 1 << k
        return p

    def _bounds_ok(self, av: list) -> bool:
        need = self.need
        for lists in (self.out_edges, self.in_edges):
            for es in lists:
                tot = 0
                union = 0
                for i in es:
                    if need[i]:
                        tot += need[i]
                        union |= av[i]
                if tot > bin(union).count("1"):
                    return False
        for cyc in self.cycles:
            tot = sum(need[i] for i in cyc)
            if not tot:
                continue
            L = len(cyc) - 1
            cap = 0
            for k in range(self.palette):
                bit = 1 << k
                have = sum(1 for i in cyc if self.col[i] & bit)
                can = sum(1 for i in cyc if need[i] and av[i] & bit)
                cap += max(0, min(L - have, can))
            if tot > cap:
                return False
        return True

    def _propagate(self):
        """Apply forced assignments; return the availability list or None on conflict."""
        while True:
            av = [self.avail(i) if self.need[i] else 0 for i in range(len(self.need))]
            changed = False
            for i, a in enumerate(av):
                n = self.need[i]
                if not n:
                    continue
                c = bin(a).count("1")
                if c < n:
                    return None
                if c == n:
                    for k in _bits(a):
                        if not (self.avail(i) >> k) & 1:
                            return None
                        self.assign(i, k)
                        self.stats.forced += 1
                    changed = True
                    break
            if not changed:
                return av if self._bounds_ok(av) else None

    def _choose(self, av: list):
        best = None
        for i, a in enumerate(av):
            n = self.need[i]
            if not n:
                continue
            key = (bin(a).count("1") - n, -n, i)
            if best is None or key < best[0]:
                best = (key, i)
        return None if best is None else best[1]

    def _order(self, i: int, a: int) -> list:
        """Candidate colors: used colors first (most shared first), then one pristine."""
        pr = self.pristine()
        used = [k for k in _bits(a & ~pr)]
        used.sort(key=lambda k: (-self.used[k], k))
        fresh = a & pr
        if fresh:
            used.append((fresh & -fresh).bit_length() - 1)
        return used

    def solve(self) -> bool:
        self.stats.nodes += 1
        if self.stats.nodes > self.node_limit:
            raise SearchLimit(f"node limit {self.node_limit} reached")
        mark = len(self.trail)
        av = self._propagate()
        if av is None:
            self.undo(mark)
            return False
        i = self._choose(av)
        if i is None:
            return True
        pr = self.pristine()
        for k in self._order(i, av[i]):
            m2 = len(self.trail)
            if (self.avail(i) >> k) & 1 and self.need[i]:
                self.assign(i, k)
                if self.solve():
                    return True
                self.undo(m2)
            bit = 1 << k
            self.forbid(i, (pr & self.full) if bit & pr else bit)
            av2 = self.avail(i)
            if bin(av2).count("1") < self.need[i]:
                break
            if not self.need[i]:
                break
        self.undo(mark)
        return False

    def coloring(self) -> dict:
        out = {}
        for i, e in enumerate(self.edge_list):
            out[e] = frozenset(k + 1 for k in _bits(self.col[i]))
        return out


def path_color(mult: dict, fixed: dict | None = None, palette: int = PALETTE,
               node_limit: int = NODE_LIMIT, allowed: dict | None = None) -> tuple[dict, SearchStats]:
    """Complete ``fixed`` (edge -> colors, possibly partial) to a full path-coloring.

    ``allowed`` restricts the colors still to be placed on an edge.
    Raises ``Uncolorable`` when the search space is exhausted.
    """
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 20000))
    try:
        S = PathColorSearch(mult, fixed, palette, node_limit, allowed=allowed)
        if not S.solve():
            raise Uncolorable(dict(mult), S.fixed_input, S.stats.nodes, "search exhausted")
        return S.coloring(), S.stats
    finally:
        sys.setrecursionlimit(old)
