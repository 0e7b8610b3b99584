"""Construction of the multigraph G1 and of the exchange sets.

G1 starts as 4 copies of C_max plus 10 copies of every full edge of C1
and 5 copies of every edge of which C1 holds a single half.  Local
structures that would make this non-path-20-colorable are then rewritten
site by site.  A site owns a fixed set of edges and has a list of named
patterns for them, in rule order; the first pattern is taken that

* reaches the site's share of ``4 w(C_max) + 10 w(C1)`` (less an allowed
  deficit for tricky triangles of C1, which the exchange set F2 repays),
* and admits a path-20-coloring of the site together with stubs for every
  edge leaving the site.

When no named pattern qualifies, the owned edges get the heaviest locally
colorable multiplicities (see ``local``).

Strange 2-cycles of C1 are repaired afterwards through E1 / F1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .analysis import (Classification, TrickyTriangle, opp_paths, triangle_replacement,
                       tricky2_test, two_triangle_replacements)
from .coloring.search import SearchLimit, Uncolorable, path_color
from .graph import Edge, Multigraph, WeightedDigraph, cycle_edges
from .local import TooManySystems, heaviest, site_problem
from .matching import MatchingInstance, max_weight_matching
from .relaxed import RelaxedCycleCover

LOCAL_NODE_LIMIT = 20_000


class BuildError(AssertionError):
    """A construction rule could not be applied consistently."""


@dataclass
class SubSite:
    kind: str
    vertices: frozenset
    owned: tuple
    options: list  # (label, {edge: mult}) in rule order, complete over ``owned``
    deficit: int = 0
    r_index: tuple = ()  # indices into C1.R whose adjustment lies here


@dataclass
class Site:
    parts: list
    choice: str = "base"
    target: int = 0
    weight: int = 0
    colorable: bool = True

    @property
    def vertices(self) -> frozenset:
        return frozenset().union(*(p.vertices for p in self.parts))

    @property
    def owned(self) -> tuple:
        seen = []
        for p in self.parts:
            for e in p.owned:
                if e not in seen:
                    seen.append(e)
        return tuple(seen)


@dataclass
class ExchangeSets:
    E1: list = field(default_factory=list)
    F1: list = field(default_factory=list)
    f: dict = field(default_factory=dict)
    F2: list = field(default_factory=list)
    rescuers: dict = field(default_factory=dict)  # R' triangle -> rescuer in R
    alpha_delta: int = 0  # sum over t-cycles of R' of 1.5 alpha + Delta

    def e1_ok(self, G: WeightedDigraph) -> bool:
        return 4 * G.weight(self.E1) <= 6 * G.weight(self.F1)

    def f2_ok(self, G: WeightedDigraph) -> bool:
        return self.alpha_delta <= 3 * G.weight(self.F2)


@dataclass
class BuildPlan:
    G: WeightedDigraph
    cls: Classification
    C1: RelaxedCycleCover
    mult: Multigraph
    cmax_prime: set
    sites: list
    exchange: ExchangeSets
    notes: list = field(default_factory=list)
    target: int = 0

    @property
    def weight(self) -> int:
        return self.mult.total_weight()

    def bound_ok(self) -> bool:
        return self.weight >= self.target

    def describe(self) -> str:
        G = self.G
        lab = G.labels
        lines = [f"weight {G.unscaled(self.weight)}", f"target {G.unscaled(self.target)}"]
        for e in self.mult.edges():
            u, v = e
            tags = ",".join(sorted(self.mult.tags.get(e, ()))) or "-"
            lines.append(f"edge {lab[u]} {lab[v]} mult {self.mult.mult[e]} tags {tags}")
        for n in self.notes:
            lines.append(f"note {n}")
        return "\n".join(lines) + "\n"


def _lab(G, e):
    return "(" + ",".join(str(G.labels[x]) for x in e) + ")"


def base_multiplicities(cmax_edges, C1: RelaxedCycleCover) -> dict:
    m: dict = {}
    for e in cmax_edges:
        m[e] = m.get(e, 0) + 4
    for e in C1.full:
        m[e] = m.get(e, 0) + 10
    for e, _ in C1.lone:
        m[e] = m.get(e, 0) + 5
    return m


def _contribution(G: WeightedDigraph, C1: RelaxedCycleCover, cmax: set, edges) -> int:
    """Share of ``4 w(C_max) + 10 w(C1)`` carried by ``edges`` (adjustments excluded)."""
    tot = 0
    for e in edges:
        if e in cmax:
            tot += 4 * G(*e)
        if e in C1.full:
            tot += 10 * G(*e)
        tw, hw = C1.half_weights.get(e, (0, 0))
        if (e, "tail") in C1.lone:
            tot += 10 * tw
        if (e, "head") in C1.lone:
            tot += 10 * hw
    return tot


# -- named patterns --------------------------------------------------------

def _triangle_symmetries(t):
    """The six relabelings of ``{p, q, r}`` that map the directed triangle ``t`` onto itself
    (as a set of edges, possibly after reversing every edge)."""
    p, q, r = t
    rots = [(p, q, r), (q, r, p), (r, p, q)]
    out = []
    for a, b, c in rots:
        out.append(({p: a, q: b, r: c}, False))
        # reverse every edge, then swap the last two labels
        out.append(({p: a, q: c, r: b}, True))
    return out


def _map_pattern(pat: dict, sigma: dict, rev: bool) -> dict:
    out = {}
    for (x, y), k in pat.items():
        e = (sigma[x], sigma[y])
        if rev:
            e = (e[1], e[0])
        out[e] = k
    return out


def harmonious_patterns(t) -> list:
    p, q, r = t
    named = [
        ("t3-31-i", {(r, p): 10, (q, r): 10, (p, q): 5}),
        ("t3-31-ii", {(p, r): 10, (r, p): 10}),
        ("t3-2-i", {(p, q): 10, (r, p): 10, (q, r): 15}),
        ("t3-2-ii", {(p, r): 10, (r, q): 10, (q, r): 10}),
        ("t3-2-iii", {(q, r): 10, (r, p): 10, (p, r): 10}),
    ]
    out = []
    seen = set()
    for label, pat in named:
        for sigma, rev in _triangle_symmetries(t):
            m = _map_pattern(pat, sigma, rev)
            key = frozenset(m.items())
            if key not in seen:
                seen.add(key)
                out.append((label, m))
    return out


def replacement_patterns(G: WeightedDigraph, t) -> list:
    es = cycle_edges(t)
    out = []
    for i in range(3):
        for j in range(3):
            if i != j:
                k = 3 - i - j
                out.append(("repl-20-17-3", {es[i]: 20, es[j]: 17, es[k]: 3}))
    for x, y in opp_paths(t):
        out.append(("repl-opp", {x: 20, y: 17}))
        out.append(("repl-opp", {x: 17, y: 20}))
    return out


def _complete(pat: dict, owned) -> dict:
    return {e: pat.get(e, 0) for e in owned}


def _swap_b(t: TrickyTriangle, pat: dict) -> dict:
    sw = {t.b1: t.b2, t.b2: t.b1}
    return {sw.get(e, e): k for e, k in pat.items()}


def two_triangle_patterns(G: WeightedDigraph, t: TrickyTriangle) -> list:
    a, d, b1, b2 = t.a, t.d, t.b1, t.b2
    hi, lo = (b1, b2) if G(*b1) >= G(*b2) else (b2, b1)
    named = [
        ("diluted", {a: 14, b1: 10, b2: 10, d: 3}),
        ("case1", {d: 10, a: 5}),
        ("case2-i", {d: 15, a: 5, hi: 5}),
        ("case2-ii", {d: 15, b1: 5, b2: 5}),
        ("case3", {a: 14, d: 4, b1: 5, b2: 5}),
    ]
    for k, pat in enumerate(two_triangle_replacements(G, t.p, t.q, t.r)):
        named.append((f"repl-{k + 1}", pat))
    out = []
    for label, pat in named:
        out.append((label, pat))
        sw = _swap_b(t, pat)
        if sw != pat:
            out.append((label, sw))
    return out


# -- sites -----------------------------------------------------------------

def _c1_two_triangles(cls: Classification, C1: RelaxedCycleCover):
    """Triangles of C1 (all three edges full) using exactly one edge of a C_max 2-cycle."""
    cm = cls.cmax
    succ = {}
    for u, v in C1.full:
        succ[u] = v
    out = []
    seen = set()
    for x in range(cls.G.n):
        y = succ.get(x)
        z = succ.get(y) if y is not None else None
        if z is None or succ.get(z) != x or len({x, y, z}) < 3:
            continue
        tri = frozenset((x, y, z))
        if tri in seen:
            continue
        seen.add(tri)
        for p, q, r in ((x, y, z), (y, z, x), (z, x, y)):
            if cm.succ[q] == r and cm.succ[r] == q:
                out.append((p, q, r))
    return out


def collect_sites(G: WeightedDigraph, cls: Classification, C1: RelaxedCycleCover,
                  base: dict, cmax: set) -> list[Site]:
    """Sub-sites with their options; preferred options come first, in rule order."""
    parts: list[SubSite] = []
    full = C1.full
    for cyc in cls.cmax.cycles:
        if len(cyc) == 2:
            u, v = cyc
            owned = ((u, v), (v, u))
            if (u, v) in full and (v, u) in full:
                heavy = max(owned, key=lambda e: (G(*e), -owned.index(e)))
                opts = [("2cycle-20", _complete({heavy: 20}, owned))]
            else:
                opts = [("base", _complete(base, owned))]
            parts.append(SubSite("cmax-2cycle", frozenset(cyc), owned, opts))
        elif len(cyc) == 3:
            owned = tuple(cycle_edges(cyc) + cycle_edges(cyc[::-1]))
            es = cycle_edges(cyc)
            halfy = bool(C1.halves_in(owned))
            strange = _strange_in_triangle(G, cyc, C1, base, owned)
            repl = [(lab, _complete(p, owned)) for lab, p in replacement_patterns(G, cyc)]
            harm = [(lab, _complete(p, owned)) for lab, p in harmonious_patterns(cyc)]
            basic = [("base", _complete(base, owned))]
            if all(e in full for e in es):
                pref = _by_weight(G, repl)
            elif strange:
                pref = strange
            elif halfy:
                pref = harm + basic
            else:
                pref = basic
            parts.append(SubSite("cmax-triangle", frozenset(cyc), owned, pref))
    credited = set(C1.credited())
    diluted = set(C1.diluted())
    r_cycles = {t.cycle for t in C1.R}
    for k, t in enumerate(C1.R):
        owned = (t.a, t.d, t.b1, t.b2)
        b = _complete(base, owned)
        if k in credited:
            b[t.d] += 1
        named = [(lab, _complete(p, owned)) for lab, p in two_triangle_patterns(G, t)]
        by = {lab: [o for o in named if o[0] == lab] for lab, _ in named}
        if k in diluted:
            pref = by["diluted"]
        elif k in credited:
            pref = [("bow", b)] + by["case1"]
        elif C1.halves_in([t.b1, t.b2]) and C1.halves_in([t.a, t.d]):
            pref = by["case2-i"] + by["case2-ii"] + [("case3", b)]
        else:
            pref = [("base", b)]
        parts.append(SubSite("R-triangle", frozenset(t.cycle), owned, pref, r_index=(k,)))
    for p, q, r in _c1_two_triangles(cls, C1):
        if (p, q, r) in r_cycles:
            continue
        tricky = tricky2_test(G, p, q, r)[0]
        owned = ((q, r), (r, q), (p, q), (r, p))
        a, d, b1, b2 = owned
        dil = ("diluted", _complete({a: 14, b1: 10, b2: 10, d: 3}, owned))
        repl = _by_weight(G, [(f"repl-{i + 1}", _complete(pat, owned))
                              for i, pat in enumerate(two_triangle_replacements(G, p, q, r))])
        deficit = G(r, q) if tricky else 0
        parts.append(SubSite("C1-tricky-triangle" if tricky else "C1-2triangle",
                             frozenset((p, q, r)), owned, [dil] if tricky else repl,
                             deficit=deficit))
    for u, v in cls.tricky2:
        if len(cls.cmax.cycles[_cycle_index(cls, u)]) < 4:
            continue
        if not C1.halves_in([(u, v), (v, u)]):
            continue
        u1 = cls.cmax.pred(u)
        v1 = cls.cmax.succ[v]
        owned = ((u, v), (v, u), (u1, u), (v, v1))
        pref = [("strange-halfy", _complete({(u, v): 10, (v, u): 10}, owned))]
        parts.append(SubSite("halfy-2cycle", frozenset((u, v, u1, v1)), owned, pref))
    return _merge(parts)


def _by_weight(G, opts):
    return sorted(opts, key=lambda o: -sum(k * G(*e) for e, k in o[1].items()))


def _cycle_index(cls: Classification, v: int) -> int:
    for i, c in enumerate(cls.cmax.cycles):
        if v in c:
            return i
    raise KeyError(v)


def _strange_in_triangle(G, cyc, C1, base, owned) -> list:
    """Strange 2-cycles of C1 inside a C_max triangle: lose 4 copies of the
    lighter edge, gain 6 copies of an adjacent triangle edge."""
    out = []
    for u, v in cycle_edges(cyc):
        if (u, v) in C1.full and (v, u) in C1.full:
            light = min(((u, v), (v, u)), key=lambda e: (G(*e), e))
            w = next(x for x in cyc if x not in (u, v))
            for nb in ((w, u), (v, w)):
                m = dict(_complete(base, owned))
                m[light] -= 4
                m[nb] += 6
                if all(0 <= k <= 20 for k in m.values()):
                    out.append(("strange-in-triangle", m))
    return out


def _merge(parts: list[SubSite]) -> list[Site]:
    groups: list[list[SubSite]] = []
    for p in parts:
        hit = [g for g in groups if any(p.vertices & q.vertices for q in g)]
        merged = [p]
        for g in hit:
            merged = g + merged
            groups.remove(g)
        groups.append(merged)
    return [Site(g) for g in groups]


def _site_options(site: Site) -> list:
    """Combinations of the preferred sub-site options, later parts overriding shared edges."""
    out = []
    for combo in product(*(p.options for p in site.parts)):
        m = {}
        for _, pat in combo:
            m.update(pat)
        out.append(("+".join(lab for lab, _ in combo), m))
    return out


def _cheap_obstruction(mult: dict, vertices) -> bool:
    """Necessary conditions: degrees, 2-cycles and triangles within ``vertices``."""
    for x in vertices:
        if sum(k for (a, _), k in mult.items() if a == x) > 20:
            return True
        if sum(k for (_, b), k in mult.items() if b == x) > 20:
            return True
    vs = sorted(vertices, key=repr)
    for i, x in enumerate(vs):
        for y in vs[i + 1:]:
            if mult.get((x, y), 0) + mult.get((y, x), 0) > 20:
                return True
            for z in vs:
                if z in (x, y):
                    continue
                for cyc in (((x, y), (y, z), (z, x)),):
                    if sum(mult.get(e, 0) for e in cyc) > 40:
                        return True
    return False


def _locally_colorable(mult: dict, site_vertices: frozenset, node_limit: int) -> bool:
    _, local = site_problem(mult, site_vertices, (), None)
    if _cheap_obstruction(local, site_vertices):
        return False
    try:
        return heaviest({}, local) is not None
    except TooManySystems:
        pass
    try:
        path_color(local, node_limit=node_limit)
        return True
    except (Uncolorable, SearchLimit):
        return False


def choose_site(G: WeightedDigraph, C1: RelaxedCycleCover, cmax: set, mult: dict,
                site: Site, node_limit: int = LOCAL_NODE_LIMIT):
    """First rule option that reaches the site target and is locally colorable;
    otherwise the heaviest locally colorable multigraph on the owned edges."""
    owned = site.owned
    target = _contribution(G, C1, cmax, owned)
    target += 10 * sum(C1.adj(k) for p in site.parts for k in p.r_index)
    target -= sum(p.deficit for p in site.parts)
    site.target = target

    def weight(pat):
        return sum(k * G(*e) for e, k in pat.items())

    seen = set()
    for label, pat in _site_options(site):
        key = frozenset(pat.items())
        if key in seen or any(k < 0 or k > 20 for k in pat.values()):
            continue
        seen.add(key)
        if weight(pat) < target:
            continue
        trial = dict(mult)
        trial.update(pat)
        if _locally_colorable(trial, site.vertices, node_limit):
            return label, pat, weight(pat), True
    free, fixed = site_problem(mult, site.vertices, owned, lambda e: G(*e))
    best = heaviest(free, fixed)
    if best is not None:
        return "local-opt", best.mult, best.weight, best.weight >= target
    pat = {e: mult.get(e, 0) for e in owned}
    return "base", pat, weight(pat), False


# -- exchange sets -----------------------------------------------------------

def strange_2cycles(cls: Classification, C1: RelaxedCycleCover) -> list[Edge]:
    """Strange 2-cycles of C1 on C_max cycles of length >= 4, oriented as their C_max edge."""
    out = []
    cm = cls.cmax
    for u in range(cls.G.n):
        v = cm.succ[u]
        if (u, v) in C1.full and (v, u) in C1.full and cm.succ[v] != u:
            if len(cls.cmax.cycles[_cycle_index(cls, u)]) >= 4:
                out.append((u, v))
    return out


def choose_e1_f1(G: WeightedDigraph, cls: Classification, strange: list[Edge]) -> ExchangeSets:
    """E1 takes the lighter edge of each strange 2-cycle; F1 one C_max neighbour each.

    Among assignments whose images form a matching, the heaviest F1 is
    taken; per C_max cycle the all-incoming / all-outgoing choices of the
    non-incorrigible case are among them.
    """
    X = ExchangeSets()
    if not strange:
        return X
    cm = cls.cmax
    E1 = [min(((u, v), (v, u)), key=lambda e: (G(*e), e)) for u, v in strange]
    nbrs = [((cm.pred(u), u), (v, cm.succ[v])) for u, v in strange]
    best = None
    for choice in product((0, 1), repeat=len(strange)):
        F = []
        for c, nb in zip(choice, nbrs):
            if nb[c] not in F:
                F.append(nb[c])
        ends = [x for e in F for x in e]
        if len(ends) != len(set(ends)):
            continue
        key = (G.weight(F), tuple(-c for c in choice))
        if best is None or key > best[0]:
            best = (key, choice, F)
    if best is None:
        raise BuildError("no matching choice of F1 neighbours")
    _, choice, F = best
    X.E1 = E1
    X.F1 = F
    X.f = {e: nb[c] for e, c, nb in zip(E1, choice, nbrs)}
    return X


def _alt_components(N: list, Np: list):
    """Connected components of N u N' (edges are ``(tcycle, tpoint)``) as edge lists."""
    adj: dict = {}
    edges = [("N", e) for e in N] + [("P", e) for e in Np]
    for i, (_, (c, p)) in enumerate(edges):
        adj.setdefault(("c", c), []).append(i)
        adj.setdefault(("p", p), []).append(i)
    seen = set()
    comps = []
    for i in range(len(edges)):
        if i in seen:
            continue
        stack = [i]
        comp = []
        seen.add(i)
        while stack:
            j = stack.pop()
            comp.append(j)
            c, p = edges[j][1]
            for node in (("c", c), ("p", p)):
                for k in adj[node]:
                    if k not in seen:
                        seen.add(k)
                        stack.append(k)
        comps.append([edges[j] for j in comp])
    return comps


def _pair_component(comp, wprime: dict):
    """Pair every N' edge with a distinct adjacent N edge.

    A component is an alternating path or cycle.  Pairs whose 2-cycles have
    equal ``w'`` are preferred (a shared 2-cycle always qualifies), then pairs
    through a shared 2-cycle.
    """
    np_edges = [e for tag, e in comp if tag == "P"]
    n_edges = [e for tag, e in comp if tag == "N"]
    if not np_edges:
        return []

    def share(x, y):
        if x[0] == y[0]:
            return "c"
        if x[1] == y[1]:
            return "p"
        return None
    cand = []
    for e in np_edges:
        for f in n_edges:
            via = share(e, f)
            if via:
                score = 100 + 10 * (wprime[e] == wprime[f]) + (via == "c")
                cand.append((("P", e), ("N", f), score))
    verts = tuple({v for a, b, _ in cand for v in (a, b)})
    M = max_weight_matching(MatchingInstance(verts, tuple(cand)))
    got = {}
    for a, b in M.pairs:
        if a[0] == "N":
            a, b = b, a
        got[a[1]] = b[1]
    if len(got) < len(np_edges):
        raise BuildError("alternating component has an N' edge without a partner")
    return [(e, got[e], share(e, got[e])) for e in np_edges]


def compute_exchange_sets(G: WeightedDigraph, cls: Classification, C1: RelaxedCycleCover,
                          Rprime: list[TrickyTriangle], strange: list[Edge]) -> ExchangeSets:
    X = choose_e1_f1(G, cls, strange)
    if not Rprime:
        return X
    tri_of = {}
    for t in cls.tricky_tri:
        tri_of[(t.tcycle, t.p)] = t
    wprime = {k: t.wprime for k, t in tri_of.items()}
    N = [(t.tcycle, t.p) for t in cls.R]
    Np = [(t.tcycle, t.p) for t in Rprime]
    f1_heads = {e[1] for e in X.F1}
    for comp in _alt_components(N, Np):
        for e, f, via in _pair_component(comp, wprime):
            t, tr = tri_of[e], tri_of[f]
            X.rescuers[t] = tr
            if via == "c":
                p1 = tr.p
                edge = tr.b1 if p1 in f1_heads else tr.b2
            else:
                edge = tr.b1 if tr.p in f1_heads else tr.b2
            X.F2.append(edge)
    for t in Rprime:
        a, d = G(*t.a), G(*t.d)
        alpha = min(a, d)
        delta = d - 3 * a // 2
        X.alpha_delta += 3 * alpha // 2 + delta
    return X


# -- the builder ---------------------------------------------------------------

def build_g1(G: WeightedDigraph, cls: Classification, C1: RelaxedCycleCover,
             node_limit: int = LOCAL_NODE_LIMIT) -> BuildPlan:
    cmax = set(cls.cmax.edges)
    base = base_multiplicities(cmax, C1)
    mult = dict(base)
    target = 4 * G.weight(cmax) + 10 * C1.weight
    sites = collect_sites(G, cls, C1, base, cmax)
    notes = []
    cmax_prime = set(cmax)
    for site in sites:
        label, pat, w, ok = choose_site(G, C1, cmax, mult, site, node_limit)
        site.choice, site.weight, site.colorable = label, w, ok
        mult.update(pat)
        verts = " ".join(str(G.labels[v]) for v in sorted(site.vertices))
        if label.replace("base", "").strip("+"):
            notes.append(f"site [{verts}] {label}")
        if not ok:
            notes.append(f"site [{verts}] below its share or not locally colorable")
        if "strange-halfy" in label:
            for p in site.parts:
                if p.kind == "halfy-2cycle":
                    (u, v), (v_, u_), e1, e2 = p.owned
                    cmax_prime -= {e1, e2}
                    cmax_prime.add((v, u))
        for lab2, sub in zip(label.split("+"), site.parts):
            if lab2 in ("t3-31-ii", "t3-2-ii", "t3-2-iii") and sub.kind == "cmax-triangle":
                cyc = next(c for c in cls.cmax.cycles if frozenset(c) == sub.vertices)
                cmax_prime -= set(cycle_edges(cyc))
                cmax_prime |= {e for e in sub.owned if pat.get(e, 0) >= 10}
    strange = strange_2cycles(cls, C1)
    rprime = []
    rset = set(C1.R)
    for t in cls.tricky_tri:
        if t not in rset and all(e in C1.full for e in t.edges):
            rprime.append(t)
    X = compute_exchange_sets(G, cls, C1, rprime, strange)
    for e in X.E1:
        mult[e] -= 4
    # a site that fell back to its local optimum may already saturate an edge
    for name, k in (("F1", 6), ("F2", 3)):
        kept = []
        for e in getattr(X, name):
            if mult.get(e, 0) + k > 20:
                notes.append(f"{name} edge {_lab(G, e)} saturated by its site, skipped")
                continue
            mult[e] = mult.get(e, 0) + k
            kept.append(e)
        setattr(X, name, kept)
    for u, v in strange:
        notes.append(f"strange 2-cycle {_lab(G, (u, v))}")
    M = Multigraph()
    for e, k in mult.items():
        if k < 0:
            raise BuildError(f"negative multiplicity on {e}")
        if k:
            M.set(e, k, G(*e))
    _tag(M, G, cls, C1, cmax_prime, X)
    plan = BuildPlan(G, cls, C1, M, cmax_prime, sites, X, notes, target)
    bad = M.degree_violations()
    if bad:
        fixed = reoptimize(plan)
        if fixed is None:
            raise BuildError(f"degree bound violated: {bad}")
        plan = fixed
    return plan


def reoptimize(plan: BuildPlan) -> BuildPlan | None:
    """Heaviest colorable multiplicities on every site-owned and exchange edge,
    all other edges kept; None when even that is not colorable."""
    G, X = plan.G, plan.exchange
    free = {e for site in plan.sites for e in site.owned} | set(X.E1) | set(X.F1) | set(X.F2)
    fixed = {e: k for e, k in plan.mult.mult.items() if e not in free and k > 0}
    try:
        best = heaviest({e: G(*e) for e in sorted(free)}, fixed)
    except TooManySystems:
        return None
    if best is None:
        return None
    mult = dict(fixed)
    mult.update(best.mult)
    M = Multigraph()
    for e, k in mult.items():
        if k:
            M.set(e, k, G(*e))
    _tag(M, G, plan.cls, plan.C1, plan.cmax_prime, X)
    notes = plan.notes + ["site choices re-optimized jointly"]
    return BuildPlan(G, plan.cls, plan.C1, M, plan.cmax_prime, plan.sites, X, notes, plan.target)


def _tag(M: Multigraph, G, cls, C1, cmax_prime, X: ExchangeSets):
    credited = set(C1.credited())
    for e in M.mult:
        if e in cmax_prime:
            M.tag(e, "cmax")
            if M.mult[e] == 10:
                M.tag(e, "b-edge")
        if e in C1.full:
            M.tag(e, "c1")
    for k, t in enumerate(C1.R):
        if k in credited and M.mult.get(t.d) == 5:
            M.tag(t.d, "bow")
    tri_edges = set()
    for t in cls.tricky3:
        tri_edges |= set(cycle_edges(t))
    for t in cls.tricky_tri:
        tri_edges |= {t.a, t.b1, t.b2}
    for e in tri_edges:
        if M.mult.get(e) == 5 and "bow" not in M.tags.get(e, ()):
            M.tag(e, "s-edge")
    for e in X.F2:
        M.tag(e, "f2")
    for e in X.F1:
        M.tag(e, "f1")
