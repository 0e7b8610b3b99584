"""Why some dense multigraphs cannot be path-colored.

A directed cycle with 10 copies of each edge, where every vertex also has
an in-ray on colors 1-4 and an out-ray on colors 5-8.  The cycle edges are
left with 12 colors and each color can sit on at most L - 1 of them.
"""

from maxatsp.coloring import Uncolorable, check_coloring, path_color
from maxatsp.coloring.gadgets import cycle_with_rays


def attempt(L, **kw):
    mult, fixed = cycle_with_rays(L, **kw)
    need = 10 * L
    room = 12 * (L - 1)
    print(f"L={L}: cycle needs {need} color slots, at most {room} available")
    try:
        col, stats = path_color(mult, fixed)
    except Uncolorable as exc:
        print(f"  uncolorable, proved after {exc.nodes} search nodes")
        return
    assert check_coloring(mult, col) is None
    print(f"  colored ({stats.nodes} nodes), checker agrees")


attempt(4)
attempt(6)
print("\nreusing the in-ray colors on one out-ray frees four more colors:")
attempt(4, out_overrides={0: {1, 2, 3, 4}})
