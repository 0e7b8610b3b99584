"""From paths to a tour, and the end-to-end solver.

``solve`` takes one of two routes.  When C_max has no hard cycle, dropping
the lightest edge of every cycle already keeps 7/10 of w(C_max).  Otherwise
C1 and G1 are built, G1 is path-20-colored and the heaviest color class is
patched into a tour.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from .analysis import Classification, classify, is_hard
from .coloring import PALETTE, ColoringFailed, Uncolorable, check_coloring, class_weights
from .coloring.engine import color_multigraph
from .graph import CycleCover, Tour, WeightedDigraph, cycle_edges
from .multigraph import BuildError, BuildPlan, build_g1, reoptimize
from .oracle import HK_CAP, OracleRefused, held_karp_opt
from .relaxed import compute_c1, preprocess_alternating

BRANCHES = ("fast-path", "full-pipeline", "fallback")


class ContractViolation(ValueError):
    """An operation was called outside its precondition."""


class RatioViolation(AssertionError):
    """The tour is below 7/10 of the exact optimum."""


@dataclass(frozen=True)
class PathSet:
    paths: tuple  # tuples of vertices; a lone vertex is a path of length 0
    weight: int

    def __post_init__(self):
        seen = [v for p in self.paths for v in p]
        if len(seen) != len(set(seen)):
            raise ValueError("paths share a vertex")

    @classmethod
    def of(cls, paths, G: WeightedDigraph) -> "PathSet":
        paths = tuple(tuple(p) for p in paths if p)
        w = sum(G(a, b) for p in paths for a, b in zip(p, p[1:]))
        return cls(paths, w)

    @classmethod
    def from_edges(cls, edges, G: WeightedDigraph) -> "PathSet":
        """Paths spelled out by an edge set with in/out-degree at most one and no cycle."""
        succ = dict(edges)
        heads = set(succ.values())
        if len(succ) != len(edges) or len(heads) != len(edges):
            raise ValueError("edge set is not a path system")
        paths = []
        for s in sorted(set(succ) - heads):
            p = [s]
            while p[-1] in succ:
                p.append(succ[p[-1]])
            paths.append(p)
        if sum(len(p) - 1 for p in paths) != len(edges):
            raise ValueError("edge set contains a cycle")
        return cls.of(paths, G)


@dataclass
class RatioReport:
    instance: str
    n: int
    tour_weight: int
    opt: int | None
    branch: str
    timings: dict = field(default_factory=dict)
    color_route: str = ""
    g1_weight: int | None = None
    class_weight: int | None = None
    notes: list = field(default_factory=list)
    details: dict = field(default_factory=dict, repr=False)  # intermediate objects

    @property
    def ratio(self) -> Fraction | None:
        if self.opt is None:
            return None
        return Fraction(1) if self.opt == 0 else Fraction(self.tour_weight, self.opt)

    def meets_bound(self) -> bool | None:
        if self.opt is None:
            return None
        return 10 * self.tour_weight >= 7 * self.opt

    def as_pairs(self, G: WeightedDigraph) -> list[tuple[str, object]]:
        r = self.ratio
        out = [("instance", self.instance or "-"), ("n", self.n),
               ("tour_weight", G.unscaled(self.tour_weight)),
               ("opt", "-" if self.opt is None else G.unscaled(self.opt)),
               ("ratio", "-" if r is None else f"{float(r):.6f}"),
               ("bound_ok", "-" if r is None else str(self.meets_bound()).lower()),
               ("branch", self.branch)]
        if self.color_route:
            out.append(("color_route", self.color_route))
        if self.g1_weight is not None:
            out.append(("g1_weight", G.unscaled(self.g1_weight)))
            out.append(("class_weight", G.unscaled(self.class_weight)))
        for k, v in self.timings.items():
            out.append((f"time_{k}", f"{v:.4f}"))
        return out

    def format(self, G: WeightedDigraph) -> str:
        lines = [f"{k}={v}" for k, v in self.as_pairs(G)]
        lines += [f"note={n}" for n in self.notes]
        return "\n".join(lines) + "\n"


def fast_path_extract(cmax: CycleCover, G: WeightedDigraph) -> PathSet:
    """Drop a lightest edge of every cycle (the first one in cycle order on ties)."""
    paths = []
    for cyc in cmax.cycles:
        if is_hard(G, cyc):
            raise ContractViolation(f"cycle {cyc} is hard")
        es = cycle_edges(cyc)
        k = min(range(len(es)), key=lambda i: (G(*es[i]), i))
        paths.append(cyc[k + 1:] + cyc[:k + 1])
    return PathSet.of(paths, G)


def heaviest_class_paths(col: dict, weight: dict, G: WeightedDigraph,
                         palette: int = PALETTE) -> tuple[int, PathSet]:
    """The heaviest color class (lowest color on ties) as a path set."""
    ws = class_weights(col, weight, palette)
    k = max(range(palette), key=lambda i: (ws[i], -i)) + 1
    edges = [e for e, cs in col.items() if k in cs]
    return k, PathSet.from_edges(edges, G)


def patch_to_tour(P: PathSet, G: WeightedDigraph) -> Tour:
    """Join path ends greedily, heaviest admissible connection first, then close."""
    covered = {v for p in P.paths for v in p}
    chains = [list(p) for p in P.paths] + [[v] for v in range(G.n) if v not in covered]
    while len(chains) > 1:
        best = None
        for i, a in enumerate(chains):
            for j, b in enumerate(chains):
                if i != j:
                    cand = (G(a[-1], b[0]), -i, -j)
                    if best is None or cand > best:
                        best = cand
        _, i, j = best
        i, j = -i, -j
        chains[i] = chains[i] + chains[j]
        del chains[j]
    return Tour.of(chains[0], G)


# -- the solver ----------------------------------------------------------------

@dataclass
class _Pipeline:
    """What the G1 route produced; kept for diagnostics."""
    plan: BuildPlan | None = None
    coloring: dict | None = None
    route: str = ""
    color: int = 0


def _color_plan(plan: BuildPlan, seed: int):
    cycles, paths = plan.C1.paths_and_cycles()
    return color_multigraph(plan.mult.mult, cycles, paths, seed=seed)


def g1_paths(G: WeightedDigraph, cls: Classification, seed: int = 0,
             timings: dict | None = None) -> tuple[PathSet, _Pipeline, bool]:
    """Heaviest class of a colored G1; the flag is True when a fallback was needed."""
    timings = {} if timings is None else timings
    t = time.perf_counter()
    C1, _ = compute_c1(G, cls)
    C1 = preprocess_alternating(C1, cls)
    timings["c1"] = time.perf_counter() - t
    t = time.perf_counter()
    plan = build_g1(G, cls, C1)
    timings["g1"] = time.perf_counter() - t
    t = time.perf_counter()
    fell_back = False
    try:
        res = _color_plan(plan, seed)
    except Uncolorable:
        plan = reoptimize(plan)
        if plan is None:
            raise
        fell_back = True
        res = _color_plan(plan, seed)
    timings["color"] = time.perf_counter() - t
    bad = check_coloring(plan.mult.mult, res.coloring)
    if bad is not None:
        raise ColoringFailed(f"engine returned an invalid coloring: {bad}")
    k, P = heaviest_class_paths(res.coloring, plan.mult.weight, G)
    return P, _Pipeline(plan, res.coloring, res.route, k), fell_back


def solve(G: WeightedDigraph, instance: str = "", oracle: bool = True, cap: int = HK_CAP,
          check: bool = True, seed: int = 0) -> tuple[Tour, RatioReport]:
    """Tour of weight at least 7/10 of the optimum, with its report.

    With ``oracle`` and ``n <= cap`` the exact optimum is computed; with
    ``check`` as well a tour below 7/10 of it raises ``RatioViolation``.
    """
    timings: dict = {}
    notes: list = []
    t0 = time.perf_counter()
    extra: dict = {}
    details: dict = {}
    if G.n == 2:
        tour, branch = Tour.of((0, 1), G), "fast-path"
        notes.append("two vertices: the only tour")
    else:
        t = time.perf_counter()
        cls = classify(G)
        timings["classify"] = time.perf_counter() - t
        details["cls"] = cls
        if len(cls.cmax.cycles) == 1:
            tour, branch = Tour.of(cls.cmax.cycles[0], G), "fast-path"
            notes.append("C_max is a single cycle")
        elif not cls.hard:
            details["paths"] = fast_path_extract(cls.cmax, G)
            tour, branch = patch_to_tour(details["paths"], G), "fast-path"
        else:
            try:
                P, pipe, fell_back = g1_paths(G, cls, seed, timings)
            except (BuildError, Uncolorable, ColoringFailed) as exc:
                # no guarantee on this route; the oracle check still applies
                notes.append(f"pipeline failed: {exc}")
                P = _safety_net(cls.cmax, G)
                branch = "fallback"
            else:
                branch = "fallback" if fell_back else "full-pipeline"
                notes += pipe.plan.notes
                extra = dict(color_route=pipe.route, g1_weight=pipe.plan.weight,
                             class_weight=P.weight)
                details.update(plan=pipe.plan, coloring=pipe.coloring, color=pipe.color)
            details["paths"] = P
            t = time.perf_counter()
            tour = patch_to_tour(P, G)
            timings["patch"] = time.perf_counter() - t
    timings["total"] = time.perf_counter() - t0
    opt = None
    if oracle:
        try:
            t = time.perf_counter()
            opt = held_karp_opt(G, cap)
            timings["oracle"] = time.perf_counter() - t
        except OracleRefused:
            notes.append(f"oracle skipped (n > {cap})")
    report = RatioReport(instance, G.n, tour.weight, opt, branch, timings,
                         notes=notes, details=details, **extra)
    if check and report.meets_bound() is False:
        raise RatioViolation(f"tour {tour.weight} < 7/10 of opt {opt}")
    return tour, report


def _safety_net(cmax: CycleCover, G: WeightedDigraph) -> PathSet:
    """C_max without the lightest edge of each cycle, hard cycles included."""
    paths = []
    for cyc in cmax.cycles:
        es = cycle_edges(cyc)
        k = min(range(len(es)), key=lambda i: (G(*es[i]), i))
        paths.append(cyc[k + 1:] + cyc[:k + 1])
    return PathSet.of(paths, G)
