"""Gadget graphs G' and G'' and the relaxed cycle cover C1.

Vertex names in the gadget graph are tuples::

    ("o", u) / ("i", u)        out- and in-copies of u
    ("e1", u, v) / ("e2", u, v) subdivision vertices of (u, v)
    ("g2", a, b, x)            2-cycle gadget vertex at x for the pair {a, b}
    ("gm", k, x) / ("gp", k, x) triangle gadget vertices of tricky triangle k
    ("gu", k, j)               the two absorbers of tricky triangle k
    ("A", k) / ("B", k)        dilution gadget of the k-th triangle of R

A matching edge ``(("o", u), ("e1", u, v))`` is the tail half of ``(u, v)``
and ``(("i", v), ("e2", u, v))`` its head half.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .analysis import Classification, TrickyTriangle, classify
from .graph import Edge, HalfEdge, WeightedDigraph, cycle_edges
from .matching import Matching, MatchingInstance, blossom_max_perfect


class RelaxedCoverError(AssertionError):
    """A relaxed cycle cover violates one of its defining clauses."""


@dataclass
class GadgetGraph:
    base: MatchingInstance
    provenance: dict  # frozenset pair -> tag tuple
    half_weights: dict  # subdivided edge -> (tail weight, head weight), before dilution
    gamma2: list  # pairs (a, b) carrying a 2-cycle gadget
    R: list  # TrickyTriangle, index = gadget id


@dataclass
class RelaxedCycleCover:
    """Full edges, lone half-edges and dilution flags.

    ``lone`` holds ``(edge, side)`` for edges of which exactly one half is
    present.  ``ab_external`` lists the R-indices whose (a, b) gadget edge
    is unmatched; together with the c half-edges it fixes each triangle's
    adjustment ``adj[k]`` (``-kappa`` when diluted, ``+kappa`` when credited).
    """

    n: int
    full: frozenset
    lone: frozenset
    half_weights: dict
    R: list
    ab_external: frozenset = frozenset()
    weight: int = 0

    def half_edges(self) -> list[HalfEdge]:
        out = []
        for e, side in sorted(self.lone):
            t, h = self.half_weights[e]
            out.append(HalfEdge(e, side, t if side == "tail" else h))
        return out

    def out_of(self, v: int):
        for e in self.full:
            if e[0] == v:
                return ("full", e)
        for e, side in self.lone:
            if side == "tail" and e[0] == v:
                return ("tail", e)
        raise RelaxedCoverError(f"vertex {v} has no outgoing half-edge")

    def in_of(self, v: int):
        for e in self.full:
            if e[1] == v:
                return ("full", e)
        for e, side in self.lone:
            if side == "head" and e[1] == v:
                return ("head", e)
        raise RelaxedCoverError(f"vertex {v} has no incoming half-edge")

    def has_full(self, e: Edge) -> bool:
        return e in self.full

    def halves_in(self, edges) -> list:
        es = set(edges)
        return [(e, s) for e, s in self.lone if e in es]

    def c_half_count(self, t: TrickyTriangle) -> int:
        n = 0
        for e in (t.a, t.d):
            if e in self.full:
                n += 2
            n += sum(1 for s in ("tail", "head") if (e, s) in self.lone)
        return n

    def diluted(self) -> list[int]:
        return [k for k, t in enumerate(self.R) if all(e in self.full for e in t.edges)]

    def credited(self) -> list[int]:
        return [k for k, t in enumerate(self.R)
                if k in self.ab_external and self.c_half_count(t) == 0]

    def adj(self, k: int) -> int:
        t = self.R[k]
        return -self.c_half_count(t) * t.kappa // 2 + (t.kappa if k in self.ab_external else 0)

    def recompute_weight(self, G: WeightedDigraph) -> int:
        w = G.weight(self.full)
        for e, side in self.lone:
            t, h = self.half_weights[e]
            w += t if side == "tail" else h
        return w + sum(self.adj(k) for k in range(len(self.R)))

    def paths_and_cycles(self):
        """Decompose into cycles (vertex lists) and paths (lists starting after a head half)."""
        succ = {e[0]: e[1] for e in self.full}
        pred = {e[1]: e[0] for e in self.full}
        seen = set()
        paths = []
        for v in range(self.n):
            if v in pred or v in seen:
                continue
            path = [v]
            seen.add(v)
            while path[-1] in succ:
                path.append(succ[path[-1]])
                seen.add(path[-1])
            paths.append(path)
        cycles = []
        for v in range(self.n):
            if v in seen:
                continue
            cyc = [v]
            seen.add(v)
            x = succ[v]
            while x != v:
                cyc.append(x)
                seen.add(x)
                x = succ[x]
            cycles.append(cyc)
        return cycles, paths

    def describe(self, G: WeightedDigraph) -> str:
        lab = G.labels
        lines = [f"weight {G.unscaled(self.weight)}"]
        for u, v in sorted(self.full):
            lines.append(f"full {lab[u]} {lab[v]}")
        for h in self.half_edges():
            u, v = h.edge
            lines.append(f"half {lab[u]} {lab[v]} {h.side} {G.unscaled(h.weight)}")
        for k in self.diluted():
            t = self.R[k]
            lines.append(f"diluted {lab[t.p]} {lab[t.q]} {lab[t.r]}")
        for k in self.credited():
            t = self.R[k]
            lines.append(f"credited {lab[t.p]} {lab[t.q]} {lab[t.r]}")
        return "\n".join(lines) + "\n"


def subdivided_edges(cls: Classification) -> set:
    S = set()
    for u, v in cls.tricky2:
        S.update({(u, v), (v, u)})
    for t in cls.tricky3:
        S.update(cycle_edges(t))
        S.update(cycle_edges(t[::-1]))
    for t in cls.R:
        S.update(t.edges)
        S.add(t.d)
    return S


def _corner_in_edges(t) -> dict:
    """For each corner x of t, the two edges of ``t`` and ``opp(t)`` entering x."""
    p, q, r = t
    es = cycle_edges(t) + cycle_edges((p, r, q))
    return {x: [e for e in es if e[1] == x] for x in t}


def heaviest_opp_edge(G: WeightedDigraph, t) -> Edge:
    p, q, r = t
    opp = cycle_edges((p, r, q))
    return max(opp, key=lambda e: (G(*e), -opp.index(e)))


def build_gprime(G: WeightedDigraph, cls: Classification) -> GadgetGraph:
    S = subdivided_edges(cls)
    half = {}
    for e in S:
        w = G(*e)
        half[e] = (w - w // 2, w // 2)
    t3_heads = {}
    for t in cls.tricky3:
        for x, ins in _corner_in_edges(t).items():
            h = max(G(*e) for e in ins) // 2
            for e in ins:
                half[e] = (G(*e) - h, h)
                t3_heads[e] = h
    vertices = []
    edges = []
    prov = {}

    def add_edge(a, b, w, tag):
        edges.append((a, b, w))
        prov[frozenset((a, b))] = tag

    for u in range(G.n):
        vertices += [("o", u), ("i", u)]
    for u in range(G.n):
        for v in range(G.n):
            if u == v:
                continue
            if (u, v) in S:
                e1, e2 = ("e1", u, v), ("e2", u, v)
                vertices += [e1, e2]
                tw, hw = half[(u, v)]
                add_edge(("o", u), e1, tw, ("half", (u, v), "tail"))
                add_edge(("i", v), e2, hw, ("half", (u, v), "head"))
                add_edge(e1, e2, 0, ("internal", (u, v)))
            else:
                add_edge(("o", u), ("i", v), G(u, v), ("full", (u, v)))
    gamma2 = [tuple(c) for c in cls.tricky2]
    for a, b in gamma2:
        ga, gb = ("g2", min(a, b), max(a, b), a), ("g2", min(a, b), max(a, b), b)
        vertices += [ga, gb]
        add_edge(ga, ("e1", a, b), 0, ("gamma",))
        add_edge(ga, ("e2", b, a), 0, ("gamma",))
        add_edge(gb, ("e1", b, a), 0, ("gamma",))
        add_edge(gb, ("e2", a, b), 0, ("gamma",))
    for k, t in enumerate(cls.tricky3):
        for x, ins in _corner_in_edges(t).items():
            gm, gp = ("gm", k, x), ("gp", k, x)
            vertices += [gm, gp]
            for (u, v) in ins:
                add_edge(gm, ("e2", u, v), 0, ("gamma",))
                add_edge(gp, ("e1", u, v), 0, ("gamma",))
        # two absorbers leave at most four half-edges inside t and opp(t)
        inside = cycle_edges(t) + cycle_edges(t[::-1])
        for j in range(2):
            gu = ("gu", k, j)
            vertices.append(gu)
            for (u, v) in inside:
                add_edge(gu, ("e1", u, v), 0, ("gamma",))
                add_edge(gu, ("e2", u, v), 0, ("gamma",))
    I = MatchingInstance(tuple(vertices), tuple(edges))
    return GadgetGraph(I, prov, half, gamma2, [])


def build_gdoubleprime(gp: GadgetGraph, R: list[TrickyTriangle]) -> GadgetGraph:
    verts = list(gp.base.vertices)
    reduce = {}
    extra = []
    prov = dict(gp.provenance)
    for k, t in enumerate(R):
        A, B = ("A", k), ("B", k)
        verts += [A, B]
        h = t.kappa // 2
        for a, b in ((A, ("e1",) + t.b1), (A, ("e2",) + t.b2), (B, ("e2",) + t.b1), (B, ("e1",) + t.b2)):
            extra.append((a, b, h))
            prov[frozenset((a, b))] = ("kappa", k)
        extra.append((A, B, 0))
        prov[frozenset((A, B))] = ("ab", k)
        for (x, y) in (t.a, t.d):
            for side_v in (frozenset((("o", x), ("e1", x, y))), frozenset((("i", y), ("e2", x, y)))):
                reduce[side_v] = reduce.get(side_v, 0) + h
    edges = []
    for a, b, w in gp.base.edges:
        edges.append((a, b, w - reduce.get(frozenset((a, b)), 0)))
    edges += extra
    return GadgetGraph(MatchingInstance(tuple(verts), tuple(edges)), prov, gp.half_weights,
                       gp.gamma2, list(R))


def extract_c1(M: Matching, GG: GadgetGraph, G: WeightedDigraph,
               cls: Classification | None = None) -> RelaxedCycleCover:
    halves = {}
    ab_ext = set(range(len(GG.R)))
    for pair in M.pairs:
        tag = GG.provenance[frozenset(pair)]
        if tag[0] == "full":
            halves.setdefault(tag[1], set()).update(("tail", "head"))
        elif tag[0] == "half":
            halves.setdefault(tag[1], set()).add(tag[2])
        elif tag[0] == "ab":
            ab_ext.discard(tag[1])
    full = frozenset(e for e, s in halves.items() if len(s) == 2)
    lone = frozenset((e, next(iter(s))) for e, s in halves.items() if len(s) == 1)
    C1 = RelaxedCycleCover(G.n, full, lone, GG.half_weights, GG.R, frozenset(ab_ext), M.weight)
    if C1.recompute_weight(G) != M.weight:
        raise RelaxedCoverError("weight bookkeeping mismatch")
    if cls is not None:
        C1 = normalize_tricky3(C1, G, cls)
        problems = validate(C1, cls)
        if problems:
            raise RelaxedCoverError("; ".join(problems))
    return C1


def normalize_tricky3(C1: RelaxedCycleCover, G: WeightedDigraph, cls: Classification) -> RelaxedCycleCover:
    """Merge crossing half-edges entering a corner of a tricky 3-triangle.

    Both halves entering a corner weigh the same, so the tail half of one
    edge plus the head half of the other is replaced by the first edge in
    full, at equal weight.
    """
    full = set(C1.full)
    lone = set(C1.lone)
    for t in cls.tricky3:
        for e, f in _corner_in_edges(t).values():
            for g, h in ((e, f), (f, e)):
                if (g, "tail") in lone and (h, "head") in lone:
                    lone -= {(g, "tail"), (h, "head")}
                    full.add(g)
    return RelaxedCycleCover(C1.n, frozenset(full), frozenset(lone), C1.half_weights, C1.R,
                             C1.ab_external, C1.weight)


def validate(C1: RelaxedCycleCover, cls: Classification) -> list[str]:
    """Names of violated clauses of the relaxed-cover definition (empty if valid)."""
    out = []
    n = C1.n
    outs = [0] * n
    ins = [0] * n
    for u, v in C1.full:
        outs[u] += 1
        ins[v] += 1
    for (u, v), side in C1.lone:
        if side == "tail":
            outs[u] += 1
        else:
            ins[v] += 1
    if any(x != 1 for x in outs) or any(x != 1 for x in ins):
        out.append("(i) degree: each vertex needs one outgoing and one incoming half-edge")
    for u, v in cls.tricky2:
        if (u, v) in C1.full and (v, u) in C1.full:
            out.append(f"(ii) contains tricky 2-cycle ({u},{v})")
    for t in cls.tricky3:
        for cyc in (t, t[::-1]):
            if all(e in C1.full for e in cycle_edges(cyc)):
                out.append(f"(ii) contains tricky triangle {cyc} or its opposite")
    diluted = set(C1.diluted())
    for k, t in enumerate(C1.R):
        if all(e in C1.full for e in t.edges) and k not in diluted:
            out.append(f"(iii) undiluted triangle {t.cycle}")
    allowed = subdivided_edges(cls)
    for e, _ in C1.lone:
        if e not in allowed:
            out.append(f"(iv) lone half-edge on {e}")
    return out


def compute_c1(G: WeightedDigraph, cls: Classification | None = None) -> tuple[RelaxedCycleCover, GadgetGraph]:
    cls = cls or classify(G)
    GG = build_gdoubleprime(build_gprime(G, cls), cls.R)
    M = blossom_max_perfect(GG.base)
    return extract_c1(M, GG, G, cls), GG


def alternating_cycles(C1: RelaxedCycleCover, cmax_succ, plain) -> list[list[Edge]]:
    """Alternating cycles of C_max (+) C1 through plain (unsubdivided) full edges.

    Each cycle is returned as its edge list, C_max edges at even positions.
    """
    c1_in = {v: (u, v) for (u, v) in C1.full}
    full = C1.full
    out = []
    used = set()
    n = len(cmax_succ)
    for s in range(n):
        e0 = (s, cmax_succ[s])
        if e0 in full or e0 in used or e0 not in plain:
            continue
        seq = []
        e = e0
        ok = True
        while True:
            seq.append(e)
            f = c1_in.get(e[1])
            if f is None or f not in plain or cmax_succ[f[0]] == f[1]:
                ok = False
                break
            seq.append(f)
            g = (f[0], cmax_succ[f[0]])
            if g == e0:
                break
            if g in full or g not in plain or g in seq:
                ok = False
                break
            e = g
        if ok:
            used.update(seq[::2])
            out.append(seq)
    return out


def apply_alternating(C1: RelaxedCycleCover, cyc: list[Edge], G: WeightedDigraph) -> RelaxedCycleCover:
    cm = set(cyc[::2])
    c1 = set(cyc[1::2])
    full = (set(C1.full) - c1) | cm
    new = RelaxedCycleCover(C1.n, frozenset(full), C1.lone, C1.half_weights, C1.R, C1.ab_external)
    new.weight = new.recompute_weight(G)
    return new


def preprocess_alternating(C1: RelaxedCycleCover, cls: Classification) -> RelaxedCycleCover:
    """Apply good alternating cycles until none remains; weight never decreases."""
    G = cls.G
    plain = {(u, v) for u in range(G.n) for v in range(G.n) if u != v} - subdivided_edges(cls)
    applied = set()
    while True:
        changed = False
        for cyc in alternating_cycles(C1, cls.cmax.succ, plain):
            key = frozenset(cyc)
            if key in applied:
                continue
            cand = apply_alternating(C1, cyc, G)
            if validate(cand, cls):
                continue
            if cand.weight < C1.weight:
                raise RelaxedCoverError("alternating cycle decreased the weight")
            applied.add(key)
            C1 = cand
            changed = True
            break
        if not changed:
            return C1
