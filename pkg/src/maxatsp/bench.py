"""Batch runs over generated instances, compared against the exact optimum."""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .graph import random_instance
from .tour import RatioReport, solve


@dataclass
class BenchTable:
    rows: list = field(default_factory=list)  # (family, n, seed, RatioReport)

    @property
    def ratios(self) -> list[Fraction]:
        return [r.ratio for *_, r in self.rows if r.ratio is not None]

    @property
    def min_ratio(self) -> Fraction | None:
        return min(self.ratios, default=None)

    @property
    def mean_ratio(self) -> float | None:
        rs = self.ratios
        return float(sum(rs) / len(rs)) if rs else None

    def branches(self) -> Counter:
        return Counter(r.branch for *_, r in self.rows)

    def failures(self) -> list:
        return [(f, n, s) for f, n, s, r in self.rows if r.meets_bound() is False]

    def format(self) -> str:
        out = ["family n seed tour opt ratio branch route"]
        for fam, n, seed, r in self.rows:
            ratio = "-" if r.ratio is None else f"{float(r.ratio):.4f}"
            opt = "-" if r.opt is None else r.opt
            out.append(f"{fam} {n} {seed} {r.tour_weight} {opt} {ratio} {r.branch} "
                       f"{r.color_route or '-'}")
        mn = self.min_ratio
        out.append(f"instances={len(self.rows)}")
        out.append(f"min_ratio={'-' if mn is None else f'{float(mn):.6f}'}")
        mean = self.mean_ratio
        out.append(f"mean_ratio={'-' if mean is None else f'{mean:.6f}'}")
        for b, k in sorted(self.branches().items()):
            out.append(f"branch_{b}={k}")
        out.append(f"below_bound={len(self.failures())}")
        return "\n".join(out) + "\n"


def _one(job) -> tuple:
    family, n, seed, wmax = job
    G = random_instance(n, wmax, seed, family)
    # raise nothing here: a violation is reported as a row
    _, rep = solve(G, f"{family}-n{n}-s{seed}", check=False)
    rep.timings = {k: round(v, 6) for k, v in rep.timings.items()}
    rep.details = {}
    return family, n, seed, rep


def bench_jobs(families, sizes, seeds, wmax: int = 100) -> list:
    return [(f, n, s, wmax) for f in families for n in sizes for s in seeds]


def bench(family, sizes, seeds, wmax: int = 100, jobs: int = 1) -> BenchTable:
    """One row per (family, n, seed); deterministic for fixed arguments.

    ``family`` may be one name or a list of names.  With ``jobs > 1`` the
    instances are spread over worker processes; row order is unchanged.
    """
    families = [family] if isinstance(family, str) else list(family)
    work = bench_jobs(families, list(sizes), list(seeds), wmax)
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(jobs) as ex:
            rows = list(ex.map(_one, work, chunksize=16))
    else:
        rows = [_one(j) for j in work]
    return BenchTable(rows)


__all__ = ["BenchTable", "RatioReport", "bench", "bench_jobs"]
