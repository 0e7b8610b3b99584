"""Heaviest path-colorable multigraph on a small vertex set.

A path-k-coloring is the same thing as writing the multigraph as a sum of
k path systems (edge sets with in- and out-degree at most one and no
cycle).  On a handful of vertices the path systems can be listed, and the
heaviest multigraph over a set of free edges, with the multiplicities of
the remaining (fixed) edges prescribed, is a small integer program over
how many colors use each system.  Edges leaving the vertex set are passed
in with their outer endpoint replaced by a private stub vertex.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp

from .coloring.checker import PALETTE

SYSTEM_CAP = 60_000


class TooManySystems(RuntimeError):
    """The vertex set is too large for the enumeration."""


@dataclass
class LocalOptimum:
    weight: int  # weight of the free edges only
    mult: dict  # free edge -> multiplicity
    classes: list  # one edge tuple per color


def path_systems(edges: list, cap: int = SYSTEM_CAP) -> list[int]:
    """Every path system over ``edges`` as a bitmask of edge indices."""
    m = len(edges)
    out = []

    def rec(i, mask, start_of, end_of, used_out, used_in):
        if i == m:
            out.append(mask)
            if len(out) > cap:
                raise TooManySystems(f"more than {cap} path systems")
            return
        rec(i + 1, mask, start_of, end_of, used_out, used_in)
        u, v = edges[i]
        if u in used_out or v in used_in:
            return
        s = start_of.get(u, u)
        t = end_of.get(v, v)
        if s == v:
            return
        so, eo = dict(start_of), dict(end_of)
        so.pop(u, None)
        eo.pop(v, None)
        so[t] = s
        eo[s] = t
        rec(i + 1, mask | (1 << i), so, eo, used_out | {u}, used_in | {v})

    rec(0, 0, {}, {}, frozenset(), frozenset())
    return out


def heaviest(free: dict, fixed: dict, palette: int = PALETTE,
             minimum: int | None = None) -> LocalOptimum | None:
    """Heaviest multigraph on the ``free`` edges (edge -> weight) that, together
    with ``fixed`` (edge -> multiplicity), is path-``palette``-colorable.

    Returns None when even the fixed part cannot be colored, or when the
    optimum is below ``minimum``.
    """
    fixed = {e: k for e, k in fixed.items() if k > 0}
    edges = list(free) + [e for e in fixed if e not in free]
    systems = path_systems(edges)
    nf = len(free)
    fw = [free[e] for e in edges[:nf]]
    nsys = len(systems)
    A = np.zeros((1 + len(edges) - nf, nsys))
    c = np.zeros(nsys)
    for j, mask in enumerate(systems):
        A[0, j] = 1
        w = 0
        for i in range(len(edges)):
            if (mask >> i) & 1:
                if i < nf:
                    w += fw[i]
                else:
                    A[1 + i - nf, j] = 1
        c[j] = -w
    rhs = np.array([palette] + [fixed[e] for e in edges[nf:]], dtype=float)
    res = milp(c, constraints=LinearConstraint(A, rhs, rhs),
               integrality=np.ones(nsys), bounds=Bounds(0, palette))
    if res.status != 0 or res.x is None:
        return None
    x = np.rint(res.x).astype(int)
    mult = {e: 0 for e in edges[:nf]}
    classes = []
    for j, k in enumerate(x):
        if k <= 0:
            continue
        es = tuple(edges[i] for i in range(len(edges)) if (systems[j] >> i) & 1)
        for e in es:
            if e in mult:
                mult[e] += int(k)
        classes += [es] * int(k)
    weight = sum(free[e] * k for e, k in mult.items())
    if minimum is not None and weight < minimum:
        return None
    return LocalOptimum(weight, mult, classes)


def site_problem(mult: dict, vertices, free_edges, weight) -> tuple[dict, dict]:
    """Split ``mult`` into free edges (with weights) and fixed edges around ``vertices``.

    Fixed edges with one endpoint outside get a private stub vertex.
    """
    vs = frozenset(vertices)
    free = {e: weight(e) for e in free_edges}
    fixed = {}
    stub = 0
    for (u, v), k in mult.items():
        if k <= 0 or (u, v) in free:
            continue
        iu, iv = u in vs, v in vs
        if iu and iv:
            fixed[(u, v)] = k
        elif iu:
            fixed[(u, ("stub", stub))] = k
            stub += 1
        elif iv:
            fixed[(("stub", stub), v)] = k
            stub += 1
    return free, fixed
