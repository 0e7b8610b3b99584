import numpy as np

from maxatsp.graph import WeightedDigraph


def digraph(weights: dict, n: int, default: int = 0) -> WeightedDigraph:
    """Instance from unscaled ``{(u, v): w}``, other arcs ``default``."""
    m = np.full((n, n), default, dtype=np.int64)
    for (u, v), w in weights.items():
        m[u, v] = w
    np.fill_diagonal(m, 0)
    return WeightedDigraph.from_unscaled(m)
