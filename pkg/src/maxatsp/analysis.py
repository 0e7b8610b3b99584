"""Classification of the cycles of a maximum cycle cover.

All tests are exact integer inequalities on scaled weights.  A C_max
triangle is treated as tricky when it satisfies every necessary condition
for the absence of a local replacement; a triangle failing one of them
gets the explicit replacement produced by ``triangle_replacement``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

from .graph import CycleCover, Edge, WeightedDigraph, cycle_edges
from .local import heaviest
from .matching import max_cycle_cover, rank_maximal

HARD_2CYCLE = "hard-2cycle"
HARD_TRIANGLE = "hard-triangle"
TRICKY_2CYCLE = "tricky-2cycle"
TRICKY_3 = "tricky-3triangle"
TRICKY_2 = "tricky-2triangle"
PLAIN = "plain"


@dataclass(frozen=True)
class CycleClass:
    cycle: tuple
    kind: str
    tpoint: int | None = None
    tcycle: tuple | None = None
    kappa: int | None = None
    delta: int | None = None
    wprime: int | None = None
    values: tuple = ()

    @property
    def edges(self) -> list[Edge]:
        return cycle_edges(self.cycle)


@dataclass(frozen=True)
class TrickyTriangle:
    """Tricky 2-triangle ``t = (p, q, r)`` whose t-cycle ``(q, r)`` is in C_max.

    ``a = (q, r)`` is the t-cycle edge used by ``t``; ``d = (r, q)`` the other.
    """

    p: int
    q: int
    r: int
    kappa: int
    delta: int
    wprime: int

    @property
    def cycle(self) -> tuple:
        return (self.p, self.q, self.r)

    @property
    def edges(self) -> list[Edge]:
        return [(self.p, self.q), (self.q, self.r), (self.r, self.p)]

    @property
    def tcycle(self) -> frozenset:
        return frozenset((self.q, self.r))

    @property
    def a(self) -> Edge:
        return (self.q, self.r)

    @property
    def d(self) -> Edge:
        return (self.r, self.q)

    @property
    def b1(self) -> Edge:
        return (self.p, self.q)

    @property
    def b2(self) -> Edge:
        return (self.r, self.p)

    def as_class(self) -> CycleClass:
        return CycleClass(self.cycle, TRICKY_2, self.p, (self.q, self.r),
                          self.kappa, self.delta, self.wprime)


@dataclass(frozen=True)
class TrickyGraphH:
    left: tuple  # t-cycles (frozensets)
    right: tuple  # t-points
    edges: tuple  # (tcycle, tpoint, rank)

    def rank_of(self) -> dict:
        return {(c, p): k for c, p, k in self.edges}


@dataclass
class Classification:
    G: WeightedDigraph
    cmax: CycleCover
    cycles: list = field(default_factory=list)  # CycleClass per C_max cycle
    incorrigible: list = field(default_factory=list)  # (u, v) with (u, v) in C_max
    tricky2: list = field(default_factory=list)  # (u, v) with (u, v) in C_max
    tricky3: list = field(default_factory=list)  # triangles in C_max orientation
    tricky_tri: list = field(default_factory=list)  # TrickyTriangle
    H: TrickyGraphH | None = None
    R: list = field(default_factory=list)  # TrickyTriangle

    @property
    def hard(self) -> list:
        return [c for c in self.cycles if c.kind in (HARD_2CYCLE, HARD_TRIANGLE)]

    def tricky2_pairs(self) -> set:
        return {frozenset(c) for c in self.tricky2}

    def report(self) -> str:
        G = self.G
        lab = G.labels
        out = []
        for c in self.cycles:
            cyc = " ".join(str(lab[v]) for v in c.cycle)
            vals = " ".join(f"{k}={G.unscaled(v)}" for k, v in c.values)
            out.append(f"cycle [{cyc}] kind={c.kind} {vals}".rstrip())
        for u, v in self.incorrigible:
            tag = "tricky" if (u, v) in self.tricky2 else "not-tricky"
            out.append(f"incorrigible ({lab[u]},{lab[v]}) {tag}")
        for u, v in self.tricky2:
            out.append(f"tricky-2cycle ({lab[u]},{lab[v]})")
        for t in self.tricky3:
            out.append("tricky-3triangle [" + " ".join(str(lab[v]) for v in t) + "]")
        for t in self.tricky_tri:
            mark = " in-R" if t in self.R else ""
            out.append(f"tricky-2triangle [{lab[t.p]} {lab[t.q]} {lab[t.r]}] tpoint={lab[t.p]} "
                       f"tcycle=({lab[t.q]},{lab[t.r]}) kappa={G.unscaled(t.kappa)} "
                       f"delta={G.unscaled(t.delta)} wprime={G.unscaled(t.wprime)}{mark}")
        return "\n".join(out) + "\n"


def compute_cmax(G: WeightedDigraph) -> CycleCover:
    return max_cycle_cover(G)


def is_hard(G: WeightedDigraph, cycle) -> bool:
    if len(cycle) not in (2, 3):
        return False
    es = cycle_edges(cycle)
    wc = G.weight(es)
    return all(10 * G(*e) > 3 * wc for e in es)


def classify_hard(C: CycleCover, G: WeightedDigraph) -> list[CycleClass]:
    out = []
    for cyc in C.cycles:
        wc = G.weight(cycle_edges(cyc))
        kind = PLAIN
        if is_hard(G, cyc):
            kind = HARD_2CYCLE if len(cyc) == 2 else HARD_TRIANGLE
        out.append(CycleClass(cyc, kind, values=(("w", wc),)))
    return out


def _cmax_cycle_of(C: CycleCover) -> dict:
    return {v: cyc for cyc in C.cycles for v in cyc}


def incorrigible_2cycles(C: CycleCover, G: WeightedDigraph) -> list[Edge]:
    """Strange 2-cycles ``(u, v)``, ``(u, v)`` in C_max on a cycle of length >= 4."""
    out = []
    where = _cmax_cycle_of(C)
    for u in range(G.n):
        v = C.succ[u]
        if len(where[u]) < 4:
            continue
        u1 = C.pred(u)
        v1 = C.succ[v]
        nb = G(u1, u) + G(v, v1)
        if 4 * G(u, v) > 3 * nb and 4 * G(v, u) > 3 * nb:
            out.append((u, v))
    return out


def triangle_2cycle_is_tricky(G: WeightedDigraph, t, e: Edge) -> bool:
    """Whether the 2-cycle on edge ``e`` of the C_max triangle ``t`` has no local remedy.

    With both edges of the 2-cycle in C1, the third corner keeps one C1
    edge in and one out; the 2-cycle is tricky when no path-20-colorable
    multigraph on the six edges inside ``t`` (the two C1 edges at the
    corner attached as stubs) reaches ``10 w(c) + 4 w(t)``.
    """
    u, v = e
    x = next(y for y in t if y not in e)
    need = 10 * (G(u, v) + G(v, u)) + 4 * G.weight(cycle_edges(t))
    inside = cycle_edges(t) + cycle_edges(t[::-1])
    free = {f: G(*f) for f in inside}
    stubs = {(("stub", 0), x): 10, (x, ("stub", 1)): 10}
    return heaviest(free, stubs, minimum=need) is None


def triangle_2cycles(C: CycleCover, G: WeightedDigraph, skip=()) -> list[Edge]:
    """Tricky 2-cycles inside C_max triangles, at most one per triangle (the heaviest)."""
    out = []
    for cyc in C.cycles:
        if len(cyc) != 3 or cyc in skip:
            continue
        bad = [e for e in cycle_edges(cyc) if triangle_2cycle_is_tricky(G, cyc, e)]
        if bad:
            out.append(max(bad, key=lambda e: (G(*e) + G(e[1], e[0]), e)))
    return out


def classify_tricky_2cycles(C: CycleCover, G: WeightedDigraph,
                            tricky3=()) -> tuple[list[Edge], list[Edge]]:
    """Return ``(tricky, incorrigible)``; each pair is oriented as its C_max edge."""
    inc = incorrigible_2cycles(C, G)
    inc_set = set(inc)
    tricky = []
    for cyc in C.cycles:
        if len(cyc) == 2 and is_hard(G, cyc):
            tricky.append((cyc[0], cyc[1]))
    tricky += triangle_2cycles(C, G, skip=tricky3)
    for u, v in inc:
        touching = []
        if (C.pred(u), u) in inc_set:
            touching.append((C.pred(u), u))
        if (v, C.succ[v]) in inc_set:
            touching.append((v, C.succ[v]))
        if all(G(u, v) > G(*o) for o in touching):
            tricky.append((u, v))
    used = set()
    for u, v in tricky:
        if u in used or v in used:
            raise AssertionError("tricky 2-cycles are not vertex-disjoint")
        used.update((u, v))
    return tricky, inc


def opp_paths(t) -> list[tuple[Edge, Edge]]:
    """The three two-edge paths inside the reversed triangle."""
    p, q, r = t
    opp = [(q, p), (p, r), (r, q)]
    return [(opp[i], opp[(i + 1) % 3]) for i in range(3)]


def tricky3_test(G: WeightedDigraph, t) -> tuple[bool, str]:
    """Necessary conditions for a C_max triangle to admit no replacement."""
    es = cycle_edges(t)
    W = G.weight(es)
    for e in es:
        if 5 * G(*e) >= 2 * W:
            return False, "heavy-edge"
        if 31 * G(*e) <= 9 * W:
            return False, "light-edge"
    for x, y in opp_paths(t):
        if 37 * (G(*x) + G(*y)) >= 28 * W:
            return False, "opp-path"
    return True, ""


def triangle_replacement(G: WeightedDigraph, t) -> dict:
    """Best named multigraph on a C_max triangle among the replacement patterns.

    Patterns: 20/17/3 copies spread over the three edges (every assignment)
    and 20/17 copies of the two edges of a path inside the reversed triangle.
    """
    es = cycle_edges(t)
    best = None
    for perm in permutations(es):
        cand = {perm[0]: 20, perm[1]: 17, perm[2]: 3}
        best = _better(G, best, cand)
    for x, y in opp_paths(t):
        for cand in ({x: 20, y: 17}, {x: 17, y: 20}):
            best = _better(G, best, cand)
    return best


def _better(G, best, cand):
    if best is None or G.weight_of(cand) > G.weight_of(best):
        return cand
    return best


def tricky2_test(G: WeightedDigraph, p: int, q: int, r: int) -> tuple[bool, str]:
    """Conditions for ``t = (p, q, r)`` with C_max 2-cycle ``(q, r)``."""
    a, d = G(q, r), G(r, q)
    b1, b2 = G(p, q), G(r, p)
    W = a + b1 + b2
    if not (2 * d > W and 2 * d > 3 * a):
        return False, "point-1"
    if not (10 * min(b1, b2) > 6 * d - 4 * a):
        return False, "point-2"
    if not (6 * a >= 5 * W - 6 * d):
        return False, "point-3"
    return True, ""


def two_triangle_replacements(G: WeightedDigraph, p: int, q: int, r: int) -> list[dict]:
    """Named replacement patterns for a triangle on a C_max 2-cycle (q, r)."""
    a, d, b1, b2 = (q, r), (r, q), (p, q), (r, p)
    out = [
        {a: 20, b1: 10, b2: 10},
        {a: 16, b1: 12, b2: 12},
        {a: 10, b2: 10, d: 10},
        {a: 10, b1: 10, d: 10},
    ]
    hi, lo = (b1, b2) if G(*b1) >= G(*b2) else (b2, b1)
    out.append({hi: 16, lo: 12, a: 12})
    out.append({hi: 15, lo: 13, a: 12})
    return out


def classify_tricky_triangles(C: CycleCover, G: WeightedDigraph):
    """Return ``(tricky3, tricky2)``: C_max triangles and TrickyTriangle records."""
    t3 = []
    for cyc in C.cycles:
        if len(cyc) == 3 and tricky3_test(G, cyc)[0]:
            t3.append(cyc)
    t2 = []
    for cyc in C.cycles:
        if len(cyc) != 2:
            continue
        for q, r in (cyc, cyc[::-1]):
            for p in range(G.n):
                if p in cyc:
                    continue
                ok, _ = tricky2_test(G, p, q, r)
                if ok:
                    a, d = G(q, r), G(r, q)
                    delta = d - 3 * a // 2
                    t2.append(TrickyTriangle(p, q, r, d // 10, delta, a + delta))
    return t3, t2


def build_H_and_R(tri: list[TrickyTriangle]) -> tuple[TrickyGraphH, list[TrickyTriangle]]:
    wps = sorted({t.wprime for t in tri}, reverse=True)
    rank = {w: i + 1 for i, w in enumerate(wps)}
    edges = tuple((t.tcycle, t.p, rank[t.wprime]) for t in tri)
    left = tuple(sorted({t.tcycle for t in tri}, key=sorted))
    right = tuple(sorted({t.p for t in tri}))
    H = TrickyGraphH(left, right, edges)
    keyed = [(tuple(sorted(c)), p, k) for c, p, k in edges]
    N = rank_maximal(keyed)
    chosen = {(frozenset(c), p) for c, p in N.pairs}
    R = [t for t in tri if (t.tcycle, t.p) in chosen]
    return H, R


def classify(G: WeightedDigraph, cmax: CycleCover | None = None) -> Classification:
    C = cmax if cmax is not None else compute_cmax(G)
    cls = Classification(G, C)
    cls.cycles = classify_hard(C, G)
    cls.tricky3, cls.tricky_tri = classify_tricky_triangles(C, G)
    cls.tricky2, cls.incorrigible = classify_tricky_2cycles(C, G, cls.tricky3)
    cls.H, cls.R = build_H_and_R(cls.tricky_tri)
    return cls
