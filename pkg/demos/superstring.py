"""Shortest superstring by way of Max ATSP.

The overlap graph plus one zero-weight vertex is solved as Max ATSP; the
tour becomes an order of the strings.  Compression is compared with the
best order found by trying them all.
"""

from maxatsp.ssp import LENGTH_RATIO_BOUND, optimal_compression, ssp_solve

sets = [
    ["cattag", "tagga", "ggacat", "atcat"],
    ["abab", "baba", "abba", "bbab", "aabb"],
    ["the", "hen", "end", "ndx", "dxy", "hex"],
]

for ss in sets:
    res = ssp_solve(ss)
    best, shortest = optimal_compression(ss)
    print(" ".join(ss))
    print(f"  superstring {res.superstring} (length {len(res.superstring)}, "
          f"compression {res.compression})")
    print(f"  optimum     {shortest} (length {len(shortest)}, compression {best})")

print(f"\nlength ratio guaranteed by a 0.7 compression: {float(LENGTH_RATIO_BOUND):.4f}")
