"""Instances, cycle covers, half-edges, multigraphs and tours.

All weights are stored as scaled integers: input weights are multiplied by
``SCALE`` on load so that every split used later (halves of an edge, a tenth
of an edge and half of that) stays integral.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

SCALE = 20

Edge = tuple[int, int]


class InstanceError(ValueError):
    """Malformed or invalid instance input."""


@dataclass(frozen=True, eq=False)
class WeightedDigraph:
    """Complete digraph on vertices ``0..n-1`` with scaled integer weights.

    ``labels`` are the user-facing vertex ids (used only for I/O).
    """

    w: np.ndarray
    scale: int = SCALE
    labels: tuple = ()

    def __post_init__(self):
        w = np.array(self.w, dtype=np.int64)
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise InstanceError("weight matrix must be square")
        if w.shape[0] < 2:
            raise InstanceError("need at least 2 vertices")
        np.fill_diagonal(w, 0)
        if (w < 0).any():
            raise InstanceError("negative weight")
        w.setflags(write=False)
        object.__setattr__(self, "w", w)
        if not self.labels:
            object.__setattr__(self, "labels", tuple(range(1, w.shape[0] + 1)))
        elif len(self.labels) != w.shape[0]:
            raise InstanceError("label count does not match n")

    @property
    def n(self) -> int:
        return self.w.shape[0]

    def __call__(self, u: int, v: int) -> int:
        return int(self.w[u, v])

    def __eq__(self, other):
        if not isinstance(other, WeightedDigraph):
            return NotImplemented
        return (self.scale == other.scale and self.labels == other.labels
                and np.array_equal(self.w, other.w))

    def __hash__(self):
        return hash((self.scale, self.labels, self.w.tobytes()))

    def weight(self, edges: Iterable[Edge]) -> int:
        return sum(int(self.w[u, v]) for u, v in edges)

    def weight_of(self, mult: Mapping[Edge, int]) -> int:
        """Weight of a multiset of edges given as ``edge -> multiplicity``."""
        return sum(k * int(self.w[u, v]) for (u, v), k in mult.items())

    def unscaled(self, value: int):
        """Convert a scaled quantity back to input units (int when exact)."""
        q, r = divmod(value, self.scale)
        return q if r == 0 else value / self.scale

    @classmethod
    def from_unscaled(cls, matrix, labels=()) -> "WeightedDigraph":
        m = np.array(matrix, dtype=np.int64)
        return cls(m * SCALE, SCALE, tuple(labels))


def _parse_int(tok: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise InstanceError(f"not an integer: {tok!r}") from None


def load_instance(text: str) -> WeightedDigraph:
    """Parse a matrix document or an edge-list document.

    Matrix: first line ``n``, then ``n`` rows of ``n`` entries with ``-`` on
    the diagonal.  Edge list: lines ``u v w`` covering every ordered pair.
    """
    lines = [ln.split() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln[0].startswith("#")]
    if not lines:
        raise InstanceError("empty instance")
    if len(lines[0]) == 1:
        n = _parse_int(lines[0][0])
        rows = lines[1:]
        if len(rows) != n or any(len(r) != n for r in rows):
            raise InstanceError("matrix is not square")
        m = np.zeros((n, n), dtype=np.int64)
        for i, row in enumerate(rows):
            for j, tok in enumerate(row):
                if i == j:
                    if tok != "-":
                        raise InstanceError("diagonal entries must be '-'")
                    continue
                if tok == "-":
                    raise InstanceError(f"missing weight ({i + 1},{j + 1})")
                val = _parse_int(tok)
                if val < 0:
                    raise InstanceError("negative weight")
                m[i, j] = val
        return WeightedDigraph.from_unscaled(m)
    triples = []
    for ln in lines:
        if len(ln) != 3:
            raise InstanceError("edge-list lines must be 'u v w'")
        u, v, x = (_parse_int(t) for t in ln)
        if x < 0:
            raise InstanceError("negative weight")
        if u == v:
            raise InstanceError("self-loops are not allowed")
        triples.append((u, v, x))
    ids = sorted({t[0] for t in triples} | {t[1] for t in triples})
    index = {lab: i for i, lab in enumerate(ids)}
    n = len(ids)
    m = np.full((n, n), -1, dtype=np.int64)
    for u, v, x in triples:
        if m[index[u], index[v]] >= 0:
            raise InstanceError(f"duplicate arc ({u},{v})")
        m[index[u], index[v]] = x
    np.fill_diagonal(m, 0)
    if (m < 0).any():
        i, j = map(int, np.argwhere(m < 0)[0])
        raise InstanceError(f"missing weight ({ids[i]},{ids[j]})")
    return WeightedDigraph.from_unscaled(m, ids)


def save_instance(G: WeightedDigraph) -> str:
    """Matrix document for ``G`` in input units (inverse of load_instance)."""
    if (G.w % G.scale).any():
        raise InstanceError("weights are not multiples of the scale")
    out = [str(G.n)]
    for i in range(G.n):
        out.append(" ".join("-" if i == j else str(int(G.w[i, j]) // G.scale)
                            for j in range(G.n)))
    if G.labels != tuple(range(1, G.n + 1)):
        # labels only survive through the edge-list form
        return "\n".join(f"{G.labels[i]} {G.labels[j]} {int(G.w[i, j]) // G.scale}"
                         for i in range(G.n) for j in range(G.n) if i != j) + "\n"
    return "\n".join(out) + "\n"


FAMILIES = ("uniform", "two-cycle-heavy", "triangle-heavy")


def random_instance(n: int, wmax: int, seed: int, family: str = "uniform") -> WeightedDigraph:
    """Deterministic random instance (unscaled weights in ``[0, wmax]``).

    ``two-cycle-heavy`` plants disjoint pairs whose two arcs are close to
    ``wmax``; ``triangle-heavy`` plants disjoint triangles whose edges are
    nearly balanced, so every edge carries more than 3/10 of the triangle.
    """
    if n < 2 or wmax < 0:
        raise InstanceError("need n >= 2 and wmax >= 0")
    if family not in FAMILIES:
        raise InstanceError(f"unknown family {family!r}")
    rng = np.random.default_rng([seed, FAMILIES.index(family)])
    base_hi = wmax if family == "uniform" else wmax // 2
    m = rng.integers(0, base_hi + 1, size=(n, n))
    np.fill_diagonal(m, 0)
    perm = rng.permutation(n)
    if family == "two-cycle-heavy" and wmax > 0:
        lo = max(wmax - wmax // 5, 1)
        for k in range(0, n - 1, 2):
            u, v = int(perm[k]), int(perm[k + 1])
            m[u, v] = rng.integers(lo, wmax + 1)
            m[v, u] = rng.integers(lo, wmax + 1)
    elif family == "triangle-heavy" and wmax > 0:
        lo = max(wmax - wmax // 4, 1)
        for k in range(0, n - 2, 3):
            tri = [int(x) for x in perm[k:k + 3]]
            for a, b in zip(tri, tri[1:] + tri[:1]):
                m[a, b] = rng.integers(lo, wmax + 1)
            if rng.random() < 0.5:
                # a heavy reverse arc makes the pair inside look like a 2-cycle
                a, b = tri[0], tri[1]
                m[b, a] = rng.integers(lo, wmax + 1)
    return WeightedDigraph.from_unscaled(m)


@dataclass(frozen=True)
class CycleCover:
    """A fixed-point-free permutation ``succ`` split into directed cycles."""

    succ: tuple[int, ...]

    def __post_init__(self):
        succ = tuple(int(x) for x in self.succ)
        n = len(succ)
        if sorted(succ) != list(range(n)):
            raise ValueError("succ is not a permutation")
        if any(succ[v] == v for v in range(n)):
            raise ValueError("cycle cover has a fixed point")
        object.__setattr__(self, "succ", succ)

    @property
    def cycles(self) -> tuple[tuple[int, ...], ...]:
        seen = set()
        out = []
        for s in range(len(self.succ)):
            if s in seen:
                continue
            cyc = [s]
            seen.add(s)
            v = self.succ[s]
            while v != s:
                cyc.append(v)
                seen.add(v)
                v = self.succ[v]
            out.append(tuple(cyc))
        return tuple(out)

    @property
    def edges(self) -> tuple[Edge, ...]:
        return tuple((v, s) for v, s in enumerate(self.succ))

    def pred(self, v: int) -> int:
        return self.succ.index(v)

    def weight(self, G: WeightedDigraph) -> int:
        return G.weight(self.edges)

    @classmethod
    def from_cycles(cls, cycles: Sequence[Sequence[int]]) -> "CycleCover":
        n = sum(len(c) for c in cycles)
        succ = [-1] * n
        for c in cycles:
            for a, b in zip(c, list(c[1:]) + [c[0]]):
                succ[a] = b
        return cls(tuple(succ))


def cover_weight(C: CycleCover, G: WeightedDigraph) -> int:
    return C.weight(G)


def cycle_edges(cycle: Sequence[int]) -> list[Edge]:
    return [(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))]


@dataclass(frozen=True)
class HalfEdge:
    """Head or tail half of the edge ``(u, v)``.

    The tail half sits at ``u``, the head half at ``v``.
    """

    edge: Edge
    side: str
    weight: int

    def __post_init__(self):
        if self.side not in ("head", "tail"):
            raise ValueError("side must be 'head' or 'tail'")

    @property
    def vertex(self) -> int:
        return self.edge[0] if self.side == "tail" else self.edge[1]


TAGS = ("b-edge", "s-edge", "bow", "border", "ray", "chord", "antenna", "f2", "c1", "cmax")


@dataclass
class Multigraph:
    """Edge multiplicities in ``0..20`` plus free-form tags.

    Vertices are arbitrary hashables (temporary vertices appear in derived
    multigraphs); weights are looked up through ``weight``.
    """

    mult: dict = field(default_factory=dict)
    tags: dict = field(default_factory=dict)
    weight: dict = field(default_factory=dict)

    def copy(self) -> "Multigraph":
        return Multigraph(dict(self.mult), {e: set(t) for e, t in self.tags.items()},
                          dict(self.weight))

    def set(self, e, k: int, w: int | None = None):
        if k < 0 or k > 20:
            raise ValueError(f"multiplicity {k} out of range for {e}")
        if k == 0:
            self.mult.pop(e, None)
        else:
            self.mult[e] = k
        if w is not None:
            self.weight[e] = w

    def add(self, e, k: int, w: int | None = None):
        self.set(e, self.mult.get(e, 0) + k, w)

    def tag(self, e, t: str):
        self.tags.setdefault(e, set()).add(t)

    def edges(self) -> Iterator:
        return (e for e, k in sorted(self.mult.items(), key=lambda kv: repr(kv[0])) if k > 0)

    def total_weight(self) -> int:
        return sum(k * self.weight[e] for e, k in self.mult.items())

    def outdeg(self, v) -> int:
        return sum(k for (a, _), k in self.mult.items() if a == v)

    def indeg(self, v) -> int:
        return sum(k for (_, b), k in self.mult.items() if b == v)

    def degree_violations(self) -> list:
        deg_out: dict = {}
        deg_in: dict = {}
        for (a, b), k in self.mult.items():
            deg_out[a] = deg_out.get(a, 0) + k
            deg_in[b] = deg_in.get(b, 0) + k
        bad = [("out", v, d) for v, d in deg_out.items() if d > 20]
        bad += [("in", v, d) for v, d in deg_in.items() if d > 20]
        return bad


def multigraph_from(G: WeightedDigraph, mult: Mapping[Edge, int]) -> Multigraph:
    M = Multigraph()
    for e, k in mult.items():
        if k:
            M.set(e, k, G(*e))
    return M


@dataclass(frozen=True)
class Tour:
    order: tuple[int, ...]
    weight: int

    def __post_init__(self):
        if len(set(self.order)) != len(self.order):
            raise ValueError("tour repeats a vertex")

    @classmethod
    def of(cls, order: Sequence[int], G: WeightedDigraph) -> "Tour":
        order = tuple(int(v) for v in order)
        if sorted(order) != list(range(G.n)):
            raise ValueError("tour must visit every vertex once")
        return cls(order, G.weight(cycle_edges(order)))

    def format(self, G: WeightedDigraph) -> str:
        return " ".join(str(G.labels[v]) for v in self.order) + "\n" + str(G.unscaled(self.weight)) + "\n"
