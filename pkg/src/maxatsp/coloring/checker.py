"""Independent validity check for path-20-colorings.

Deliberately shares no code with the search engine: each color class is
rebuilt from scratch as a successor map and walked.
"""

from __future__ import annotations

from dataclasses import dataclass

PALETTE = 20


@dataclass(frozen=True)
class Violation:
    kind: str  # multiplicity | palette | out-degree | in-degree | cycle | unknown-edge
    color: int | None
    where: tuple

    def __str__(self):
        c = "" if self.color is None else f" color {self.color}"
        return f"{self.kind}{c} at {self.where}"


def check_coloring(mult: dict, col: dict, palette: int = PALETTE, partial: bool = False):
    """Return ``None`` when valid, else the first ``Violation`` found.

    ``mult`` maps edges to multiplicities and ``col`` maps edges to color
    sets.  With ``partial`` an edge may carry fewer colors than its
    multiplicity (it is then treated as still being colored).
    """
    for e, cs in col.items():
        if e not in mult and cs:
            return Violation("unknown-edge", None, (e,))
    for e, k in sorted(mult.items(), key=lambda kv: repr(kv[0])):
        cs = col.get(e, ())
        if len(set(cs)) != len(cs):
            return Violation("multiplicity", None, (e,))
        if len(cs) != k and not (partial and len(cs) < k):
            return Violation("multiplicity", None, (e, len(cs), k))
        for c in cs:
            if not 1 <= c <= palette:
                return Violation("palette", c, (e,))
    for k in range(1, palette + 1):
        succ = {}
        pred = {}
        for e in sorted(col, key=repr):
            if k not in col[e]:
                continue
            u, v = e
            if u in succ:
                return Violation("out-degree", k, (u,))
            if v in pred:
                return Violation("in-degree", k, (v,))
            succ[u] = v
            pred[v] = u
        seen = set()
        for s in sorted(succ, key=repr):
            if s in seen:
                continue
            path = []
            on_path = set()
            x = s
            while True:
                if x in on_path:
                    return Violation("cycle", k, tuple(path[path.index(x):]))
                if x in seen or x not in succ:
                    break
                seen.add(x)
                on_path.add(x)
                path.append(x)
                x = succ[x]
    return None


def class_edges(col: dict, k: int) -> list:
    return sorted((e for e, cs in col.items() if k in cs), key=repr)


def class_weights(col: dict, weight: dict, palette: int = PALETTE) -> list[int]:
    """Weight of each color class, index ``k - 1`` for color ``k``."""
    out = [0] * palette
    for e, cs in col.items():
        for c in cs:
            out[c - 1] += weight[e]
    return out
