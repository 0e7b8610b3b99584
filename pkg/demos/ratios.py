"""Ratio distribution over the three generator families.

    python3 demos/ratios.py [seeds-per-size]
"""

import sys
from collections import Counter

from maxatsp.bench import bench
from maxatsp.graph import FAMILIES

seeds = int(sys.argv[1]) if len(sys.argv) > 1 else 10
for fam in FAMILIES:
    t = bench(fam, range(4, 13), range(seeds))
    hist = Counter(min(9, int(float(r) * 10)) for r in t.ratios)
    print(f"{fam}: {len(t.rows)} instances, min {float(t.min_ratio):.4f}, "
          f"mean {t.mean_ratio:.4f}")
    for b in range(7, 10):
        print(f"  ratio >= {b / 10:.1f} {'#' * hist[b]}")
    print("  branches:", dict(t.branches()))
