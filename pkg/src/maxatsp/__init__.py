"""Combinatorial 7/10-approximation for maximum asymmetric TSP."""

from .graph import (CycleCover, HalfEdge, Multigraph, Tour, WeightedDigraph,
                    cover_weight, load_instance, random_instance, save_instance)

__all__ = ["CycleCover", "HalfEdge", "Multigraph", "Tour", "WeightedDigraph",
           "cover_weight", "load_instance", "random_instance", "save_instance"]
