"""Constructive path-coloring, one C1 component at a time.

Components (cycles first, then paths) are processed in order of fewest
uncolored rays, ties by smallest id.  A ray is an edge with exactly one
endpoint in the component's vertex set S.  When S is processed every
uncolored ray and every uncolored edge inside S is colored, with new
in-rays drawing on a color set Z- and new out-rays on a disjoint set Z+.
Since afterwards no color both enters and leaves S through a newly colored
ray, a newly colored ray lies on no monochromatic cycle (the S-cut
argument); edges inside S are checked by a small exact search.  A
component that admits no such coloring is a dead end and the caller falls
back to the global engines.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .checker import PALETTE
from .search import SearchLimit, Uncolorable, path_color

LOCAL_NODES = 400


class DeadEnd(RuntimeError):
    """No admissible coloring of a component's edges under the discipline."""


@dataclass
class SafetyLedger:
    safe: dict = field(default_factory=dict)  # edge -> justification

    def mark(self, e, why: str):
        self.safe[e] = why


@dataclass
class Component:
    cid: int
    vertices: tuple
    is_cycle: bool


def components(cycles, paths) -> list[Component]:
    out = [Component(i, tuple(c), True) for i, c in enumerate(cycles)]
    out += [Component(len(cycles) + i, tuple(p), False) for i, p in enumerate(paths)]
    return out


def _split_orders(free: list, need_in: int, need_out: int):
    """Sizes of the Z- share of the free colors, most balanced first."""
    n = len(free)
    tot = need_in + need_out
    ideal = round(n * need_in / tot) if tot else n // 2
    return sorted(range(n + 1), key=lambda j: (abs(j - ideal), j))


def color_component(mult: dict, col: dict, comp: Component, palette: int = PALETTE,
                    node_limit: int = LOCAL_NODES, attempts: int = 3) -> dict:
    """Colors for every uncolored edge touching ``comp``; ``col`` is not modified."""
    S = set(comp.vertices)
    touching = [e for e in mult if e[0] in S or e[1] in S]
    new = [e for e in touching if e not in col]
    if not new:
        return {}
    old_in, old_out = set(), set()
    for e in touching:
        if e in col:
            if e[0] not in S:
                old_in |= col[e]
            elif e[1] not in S:
                old_out |= col[e]
    new_in = [e for e in new if e[0] not in S]
    new_out = [e for e in new if e[1] not in S]
    # colors already sitting at the outer endpoints of new rays
    busy: dict = {}
    for e, cs in col.items():
        busy.setdefault(("out", e[0]), set()).update(cs)
        busy.setdefault(("in", e[1]), set()).update(cs)
    everything = set(range(1, palette + 1))
    free = sorted(everything - old_in - old_out)
    only_in = old_in - old_out
    only_out = old_out - old_in
    outer = {x for e in new_in + new_out for x in e if x not in S}
    local = {e: mult[e] for e in touching}
    for x in outer:
        for e in mult:
            if x in e and e not in local and e in col:
                local[e] = mult[e]
    fixed = {e: col[e] for e in local if e in col}
    need_in = sum(mult[e] for e in new_in)
    need_out = sum(mult[e] for e in new_out)
    tried = 0
    for j in _split_orders(free, need_in, need_out):
        if tried >= attempts:
            break
        zin = only_in | set(free[:j])
        zout = only_out | set(free[j:])
        allowed = {}
        for e in new_in:
            allowed[e] = zin - busy.get(("out", e[0]), set())
        for e in new_out:
            allowed[e] = zout - busy.get(("in", e[1]), set())
        if any(len(allowed[e]) < mult[e] for e in allowed):
            continue
        tried += 1
        try:
            res, _ = path_color(local, fixed=fixed, palette=palette, node_limit=node_limit,
                                allowed=allowed)
        except (Uncolorable, SearchLimit):
            continue
        return {e: frozenset(res[e]) for e in new}
    raise DeadEnd(f"component {comp.cid} admits no disciplined coloring")


def color7(mult: dict, cycles, paths, palette: int = PALETTE,
           node_limit: int = LOCAL_NODES) -> tuple[dict, SafetyLedger, list]:
    """Color ``mult`` component by component; returns (coloring, ledger, order)."""
    mult = {e: k for e, k in mult.items() if k > 0}
    comps = components(cycles, paths)
    col: dict = {}
    ledger = SafetyLedger()
    order = []
    todo = list(comps)
    while todo:
        def key(c):
            S = set(c.vertices)
            rays = sum(1 for e in mult if (e[0] in S) != (e[1] in S) and e not in col)
            return (not c.is_cycle, rays, c.cid)
        todo.sort(key=key)
        comp = todo.pop(0)
        got = color_component(mult, col, comp, palette, node_limit)
        S = set(comp.vertices)
        for e, cs in got.items():
            col[e] = cs
            ledger.mark(e, "S-cut" if (e[0] in S) != (e[1] in S) else "checker")
        order.append(comp.cid)
    missing = [e for e in mult if e not in col]
    if missing:
        raise DeadEnd(f"{len(missing)} edges left uncolored")
    return col, ledger, order
