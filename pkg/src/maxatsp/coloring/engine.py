"""Coloring driver: constructive pass first, then the fallbacks.

Routes, in order:

1. ``color7``: component-by-component with the S-cut discipline;
2. ``kempe``: local search over proper colorings;
3. ``systems``: exact decomposition into path systems (integer program);
4. ``search``: exact backtracking, used when the decomposition is too large.

Every result goes through the independent checker before it is returned.
"""

from __future__ import annotations

from dataclasses import dataclass

from .checker import PALETTE, check_coloring
from .color7 import DeadEnd, color7
from .kempe import kempe_color
from .search import NODE_LIMIT, Uncolorable, path_color


class ColoringFailed(RuntimeError):
    """No route produced a coloring and none could prove infeasibility."""


@dataclass
class ColoringResult:
    coloring: dict
    route: str
    attempts: list  # (route, outcome) pairs


def decompose(mult: dict, palette: int = PALETTE) -> dict | None:
    """Exact path-coloring through path systems, or None when none exists."""
    from ..local import heaviest  # the local optimizer itself imports the checker
    best = heaviest({}, {e: k for e, k in mult.items() if k > 0}, palette)
    if best is None:
        return None
    col: dict = {e: set() for e, k in mult.items() if k > 0}
    for c, es in enumerate(best.classes, start=1):
        for e in es:
            col[e].add(c)
    return {e: frozenset(cs) for e, cs in col.items()}


def color_multigraph(mult: dict, cycles=(), paths=(), palette: int = PALETTE,
                     seed: int = 0, node_limit: int = NODE_LIMIT) -> ColoringResult:
    """Path-color ``mult``; raises ``Uncolorable`` when infeasibility is proven."""
    from ..local import TooManySystems
    mult = {e: k for e, k in mult.items() if k > 0}
    attempts = []

    def accept(col, route):
        bad = check_coloring(mult, col, palette)
        if bad is not None:
            attempts.append((route, f"rejected by checker: {bad}"))
            return None
        attempts.append((route, "ok"))
        return ColoringResult(col, route, attempts)

    if cycles or paths:
        try:
            col, _, _ = color7(mult, cycles, paths, palette)
            res = accept(col, "color7")
            if res:
                return res
        except DeadEnd as exc:
            attempts.append(("color7", str(exc)))
    col = kempe_color(mult, palette=palette, seed=seed)
    if col is not None:
        res = accept(col, "kempe")
        if res:
            return res
    else:
        attempts.append(("kempe", "step budget exhausted"))
    try:
        col = decompose(mult, palette)
        if col is None:
            attempts.append(("systems", "infeasible"))
            raise Uncolorable(mult, {}, 0, "no decomposition into path systems")
        else:
            res = accept(col, "systems")
            if res:
                return res
    except TooManySystems as exc:
        attempts.append(("systems", str(exc)))
    col, _ = path_color(mult, palette=palette, node_limit=node_limit)
    res = accept(col, "search")
    if res:
        return res
    raise ColoringFailed("; ".join(f"{r}: {o}" for r, o in attempts))
