"""Path-20-coloring: independent checker, exact search and the constructive engine."""

from .checker import PALETTE, Violation, check_coloring, class_edges, class_weights
from .color7 import DeadEnd, color7
from .engine import ColoringFailed, ColoringResult, color_multigraph, decompose
from .kempe import kempe_color
from .search import SearchLimit, Uncolorable, path_color

__all__ = ["PALETTE", "ColoringFailed", "ColoringResult", "DeadEnd", "SearchLimit",
           "Uncolorable", "Violation", "check_coloring", "class_edges", "class_weights",
           "color7", "color_multigraph", "decompose", "kempe_color", "path_color"]
