"""Path-coloring by local search over proper edge colorings.

Splitting every vertex into an out-side and an in-side turns the
multigraph into a bipartite one; a proper edge coloring of that graph is
a coloring in which every class has in- and out-degree at most one, i.e.
is a union of paths and cycles.  Such a coloring with 20 colors exists as
soon as all degrees are at most 20 (Konig), and is built with the usual
alternating-path argument.  Monochromatic cycles are then removed by
swapping two colors along an alternating component through an edge of a
cycle.  The search is randomized with a fixed seed and gives up after a
step budget; it proves nothing when it fails.
"""

from __future__ import annotations

import random

from .checker import PALETTE

STEP_LIMIT = 20_000


class KempeColoring:
    def __init__(self, mult: dict, palette: int = PALETTE, seed: int = 0):
        self.palette = palette
        self.rng = random.Random(seed)
        self.mult = {e: k for e, k in mult.items() if k > 0}
        verts = sorted({x for e in self.mult for x in e}, key=repr)
        self.vid = {x: i for i, x in enumerate(verts)}
        self.verts = verts
        nv = len(verts)
        # succ[k][u] = v when class k uses (u, v); pred is the inverse
        self.succ = [[-1] * nv for _ in range(palette)]
        self.pred = [[-1] * nv for _ in range(palette)]

    def _put(self, k, u, v):
        self.succ[k][u] = v
        self.pred[k][v] = u

    def _drop(self, k, u, v):
        self.succ[k][u] = -1
        self.pred[k][v] = -1

    def initial(self, fixed: dict | None = None):
        """Proper coloring extending ``fixed`` (edge -> colors 1..palette)."""
        todo = []
        frozen = self.frozen(fixed)
        for e, k in sorted(self.mult.items(), key=repr):
            u, v = self.vid[e[0]], self.vid[e[1]]
            pre = sorted((fixed or {}).get(e, ()))
            for c in pre:
                if self.succ[c - 1][u] >= 0 or self.pred[c - 1][v] >= 0:
                    raise ValueError(f"precoloring of {e!r} is not proper")
                self._put(c - 1, u, v)
            todo += [(u, v)] * (k - len(pre))
        self.rng.shuffle(todo)
        for u, v in todo:
            free_u = [k for k in range(self.palette) if self.succ[k][u] < 0]
            free_v = [k for k in range(self.palette) if self.pred[k][v] < 0]
            both = [k for k in free_u if k in free_v]
            if both:
                self._put(self.rng.choice(both), u, v)
                continue
            if not free_u or not free_v:
                raise ValueError("a vertex has degree above the palette")
            for a in free_u:
                # a is busy at v's in-side: swap a/b along the path starting there
                if any(self._swap_path_from_in(v, a, b, frozen) for b in free_v):
                    self._put(a, u, v)
                    break
            else:
                raise ValueError("precolored edges block every alternating path")

    def frozen(self, fixed) -> frozenset:
        return frozenset((self.vid[e[0]], self.vid[e[1]]) for e, cs in (fixed or {}).items() if cs)

    def _swap_path_from_in(self, v, a, b, frozen) -> bool:
        path = []
        side, x, k = "in", v, a
        while True:
            if side == "in":
                y = self.pred[k][x]
                if y < 0:
                    break
                path.append((k, y, x))
                side, x = "out", y
            else:
                y = self.succ[k][x]
                if y < 0:
                    break
                path.append((k, x, y))
                side, x = "in", y
            k = b if k == a else a
        if any((u, w) in frozen for _, u, w in path):
            return False
        self._swap(path, a, b)
        return True

    def _component(self, a, b, u, v):
        """Edges (color, u, v) of the a/b alternating component through edge (u, v)."""
        seen = set()
        stack = [("out", u), ("in", v)]
        nodes = set(stack)
        while stack:
            side, x = stack.pop()
            for k in (a, b):
                if side == "out":
                    y = self.succ[k][x]
                    if y >= 0:
                        seen.add((k, x, y))
                        if ("in", y) not in nodes:
                            nodes.add(("in", y))
                            stack.append(("in", y))
                else:
                    y = self.pred[k][x]
                    if y >= 0:
                        seen.add((k, y, x))
                        if ("out", y) not in nodes:
                            nodes.add(("out", y))
                            stack.append(("out", y))
        return seen

    def _swap(self, comp, a, b):
        for k, u, w in comp:
            self._drop(k, u, w)
        for k, u, w in comp:
            self._put(b if k == a else a, u, w)

    def cycles(self, k) -> list:
        succ = self.succ[k]
        out = []
        state = [0] * len(succ)
        for s in range(len(succ)):
            if state[s]:
                continue
            path = []
            x = s
            while x >= 0 and not state[x]:
                state[x] = 1
                path.append(x)
                x = succ[x]
            if x >= 0 and state[x] == 1:
                out.append(path[path.index(x):])
            for y in path:
                state[y] = 2
        return out

    def repair(self, steps: int = STEP_LIMIT, frozen: frozenset = frozenset()) -> bool:
        per = [self.cycles(k) for k in range(self.palette)]
        bad = sum(len(c) for c in per)
        for _ in range(steps):
            if bad == 0:
                return True
            ks = [k for k in range(self.palette) if per[k]]
            a = self.rng.choice(ks)
            cyc = self.rng.choice(per[a])
            i = self.rng.randrange(len(cyc))
            u, v = cyc[i], cyc[(i + 1) % len(cyc)]
            b = self.rng.choice([k for k in range(self.palette) if k != a])
            comp = self._component(a, b, u, v)
            if any((u2, w2) in frozen for _, u2, w2 in comp):
                continue
            self._swap(comp, a, b)
            na, nb = self.cycles(a), self.cycles(b)
            new = bad - len(per[a]) - len(per[b]) + len(na) + len(nb)
            if new <= bad or self.rng.random() < 0.05:
                per[a], per[b] = na, nb
                bad = new
            else:
                self._swap({(b if k == a else a, u2, w2) for k, u2, w2 in comp}, a, b)
        return bad == 0

    def coloring(self) -> dict:
        out = {e: set() for e in self.mult}
        for k in range(self.palette):
            for u, v in enumerate(self.succ[k]):
                if v >= 0:
                    out[(self.verts[u], self.verts[v])].add(k + 1)
        return {e: frozenset(cs) for e, cs in out.items()}


def kempe_color(mult: dict, fixed: dict | None = None, palette: int = PALETTE,
                seed: int = 0, steps: int = STEP_LIMIT) -> dict | None:
    """A path-coloring found by local search, or None when the budget runs out.

    Precolored edges of ``fixed`` keep their colors.
    """
    K = KempeColoring(mult, palette, seed)
    K.initial(fixed)
    if K.repair(steps, K.frozen(fixed)):
        return K.coloring()
    return None
