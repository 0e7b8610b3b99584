"""Follow one instance through the whole pipeline.

    python3 demos/walkthrough.py [family] [n] [seed]

Prints the cycle cover C_max and its classification, the relaxed cover
C1, the multigraph G1 against its weight target, the coloring route and
class weights, and finally the tour next to the exact optimum.
"""

import sys

from maxatsp.analysis import classify
from maxatsp.coloring import class_weights
from maxatsp.graph import random_instance
from maxatsp.oracle import held_karp_opt
from maxatsp.tour import solve


def main(family="two-cycle-heavy", n=8, seed=2):
    G = random_instance(n, 100, seed, family)
    u = G.unscaled
    print(f"instance: {family}, n={n}, seed={seed}\n")

    cls = classify(G)
    print(f"C_max weight {u(cls.cmax.weight(G))} (an upper bound on any tour)")
    print(cls.report())

    tour, rep = solve(G, f"{family}/{seed}")
    plan = rep.details.get("plan")
    if plan is None:
        print(f"no G1 needed: branch {rep.branch}")
    else:
        C1 = plan.C1
        print(f"C1 weight {u(C1.weight)}")
        print(f"G1 weight {u(plan.weight)} >= 4 w(C_max) + 10 w(C1) = {u(plan.target)}")
        for note in plan.notes:
            print("  note:", note)
        ws = class_weights(rep.details["coloring"], plan.mult.weight)
        print(f"colored by {rep.color_route}; class weights:")
        print("  " + " ".join(str(u(w)) for w in ws))
        k = rep.details["color"]
        print(f"heaviest class {k}: {u(ws[k - 1])} >= w(G1)/20 = {u(plan.weight) / 20:.2f}")
        paths = rep.details["paths"].paths
        print("its paths:", "; ".join(" ".join(str(G.labels[v]) for v in p) for p in paths))

    opt = held_karp_opt(G)
    print("\ntour", " ".join(str(G.labels[v]) for v in tour.order))
    print(f"weight {u(tour.weight)}, optimum {u(opt)}, ratio {tour.weight / opt:.4f} "
          f"(guarantee 0.7), branch {rep.branch}")


if __name__ == "__main__":
    args = sys.argv[1:]
    main(args[0] if args else "two-cycle-heavy",
         int(args[1]) if len(args) > 1 else 8,
         int(args[2]) if len(args) > 2 else 2)
