"""Shortest superstring through the overlap graph.

A superstring spelled along an order of the strings saves the sum of the
overlaps of consecutive strings; maximizing that saving (the compression)
is a maximum Hamiltonian path problem.  One extra vertex joined to every
string by weight-0 arcs turns it into Max ATSP: a tour through that
vertex is a path of the same weight.  The tour found by ``solve`` is
closed on the strings and broken at its minimum-overlap arc, which keeps
at least the weight of the tour.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

import numpy as np

from .graph import WeightedDigraph


def length_ratio_bound(alpha: Fraction) -> Fraction:
    """Superstring length ratio implied by an ``alpha``-approximation for Max ATSP."""
    return 2 + 11 * (1 - alpha) / (9 - 2 * alpha)


LENGTH_RATIO_BOUND = length_ratio_bound(Fraction(7, 10))  # 2 + 33/76


class SspError(ValueError):
    """Empty or malformed superstring input."""


def normalize(strings) -> list[str]:
    """Drop duplicates and strings contained in another; keep first-seen order."""
    uniq = list(dict.fromkeys(strings))
    return [s for s in uniq if not any(s != t and s in t for t in uniq)]


def overlap(s: str, t: str) -> int:
    """Longest proper suffix of ``s`` that is a prefix of ``t``."""
    for k in range(min(len(s), len(t)) - 1, 0, -1):
        if s.endswith(t[:k]):
            return k
    return 0


@dataclass(frozen=True)
class SspInstance:
    strings: tuple
    overlaps: dict  # (i, j) -> overlap length

    @classmethod
    def of(cls, strings) -> "SspInstance":
        strings = tuple(strings)
        if not strings:
            raise SspError("no strings")
        if any(not s for s in strings):
            raise SspError("empty string in input")
        ss = tuple(normalize(strings))
        ov = {(i, j): overlap(a, b) for i, a in enumerate(ss) for j, b in enumerate(ss) if i != j}
        return cls(ss, ov)

    def digraph(self) -> WeightedDigraph:
        """Overlap weights plus a last vertex joined by weight-0 arcs."""
        m = len(self.strings)
        w = np.zeros((m + 1, m + 1), dtype=np.int64)
        for (i, j), k in self.overlaps.items():
            w[i, j] = k
        return WeightedDigraph.from_unscaled(w)

    def merge(self, order) -> str:
        out = self.strings[order[0]]
        for a, b in zip(order, order[1:]):
            out += self.strings[b][self.overlaps[(a, b)]:]
        return out

    def compression(self, order) -> int:
        return sum(self.overlaps[(a, b)] for a, b in zip(order, order[1:]))


@dataclass
class SspResult:
    superstring: str
    order: tuple
    compression: int
    total_length: int


def _break_cycle(inst: SspInstance, cyc: list) -> tuple:
    m = len(cyc)
    if m == 1:
        return tuple(cyc)
    k = min(range(m), key=lambda i: (inst.overlaps[(cyc[i], cyc[(i + 1) % m])], i))
    return tuple(cyc[k + 1:] + cyc[:k + 1])


def ssp_solve(strings, seed: int = 0) -> SspResult:
    from .tour import solve

    inst = SspInstance.of(strings)
    m = len(inst.strings)
    if m == 1:
        order = (0,)
    else:
        G = inst.digraph()
        tour, _ = solve(G, oracle=False, seed=seed)
        i = tour.order.index(m)
        cyc = list(tour.order[i + 1:] + tour.order[:i])
        order = _break_cycle(inst, cyc)
    out = inst.merge(order)
    missing = [s for s in strings if s not in out]
    if missing:
        raise AssertionError(f"superstring misses {missing[0]!r}")
    return SspResult(out, order, inst.compression(order), sum(len(s) for s in inst.strings))


def optimal_compression(strings) -> tuple[int, str]:
    """Best compression and a shortest superstring, by trying every order."""
    inst = SspInstance.of(strings)
    best = max(permutations(range(len(inst.strings))), key=inst.compression)
    return inst.compression(best), inst.merge(best)
