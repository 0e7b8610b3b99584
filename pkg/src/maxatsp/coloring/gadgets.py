"""Small precolored configurations for exercising the colorers.

``cycle_with_rays(L)`` is a directed L-cycle with 10 copies of each edge;
every cycle vertex has one in-ray from its own outside vertex and one
out-ray to another, each with 4 copies and fixed colors.  With in-rays on
{1..4} and out-rays on {5..8} only 12 colors are left for the cycle, each
usable on at most L - 1 of its edges, so the cycle needs 10L / (L - 1)
colors: too many for L = 4, enough for L = 6.
"""

from __future__ import annotations

IN_COLORS = frozenset({1, 2, 3, 4})
OUT_COLORS = frozenset({5, 6, 7, 8})


def cycle_with_rays(L: int, in_colors=IN_COLORS, out_colors=OUT_COLORS,
                    out_overrides: dict | None = None) -> tuple[dict, dict]:
    """``(mult, fixed)``; ``out_overrides`` maps a cycle index to other out-ray colors."""
    if L < 2:
        raise ValueError("cycle needs at least 2 vertices")
    mult, fixed = {}, {}
    for i in range(L):
        mult[(i, (i + 1) % L)] = 10
        src, dst = ("in", i), ("out", i)
        mult[(src, i)] = len(in_colors)
        fixed[(src, i)] = frozenset(in_colors)
        oc = frozenset((out_overrides or {}).get(i, out_colors))
        mult[(i, dst)] = len(oc)
        fixed[(i, dst)] = oc
    return mult, fixed
