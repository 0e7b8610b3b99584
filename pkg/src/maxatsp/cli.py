"""Command line interface.

Exit status: 0 on success, 2 when the run ends in an infeasibility or a
failed check, 1 on bad usage or unreadable input.
"""

from __future__ import annotations

import argparse
import sys

from .analysis import classify
from .bench import bench
from .coloring import PALETTE, Uncolorable, check_coloring, class_weights
from .coloring.engine import ColoringFailed, color_multigraph
from .graph import FAMILIES, InstanceError, load_instance, random_instance, save_instance
from .multigraph import BuildError, build_g1, reoptimize
from .oracle import HK_CAP, OracleRefused, held_karp_opt
from .relaxed import RelaxedCoverError, compute_c1, preprocess_alternating
from .ssp import LENGTH_RATIO_BOUND, SspError, optimal_compression, ssp_solve
from .tour import RatioViolation, solve

OK, USAGE, DIAGNOSTIC = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE, f"{self.prog}: error: {message}\n")


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(str(exc)) from None


def _instance(path: str):
    try:
        return load_instance(_read(path))
    except InstanceError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _plan(G):
    cls = classify(G)
    C1, _ = compute_c1(G, cls)
    C1 = preprocess_alternating(C1, cls)
    return build_g1(G, cls, C1)


# -- subcommands ---------------------------------------------------------------

def cmd_solve(a, out):
    G = _instance(a.file)
    tour, rep = solve(G, a.file, oracle=a.oracle, seed=a.seed)
    out.write(tour.format(G))
    if a.report:
        out.write(rep.format(G))
    return OK


def cmd_report(a, out):
    G = _instance(a.file)
    tour, rep = solve(G, a.file, seed=a.seed, check=False)
    out.write(rep.format(G))
    out.write("tour=" + " ".join(str(G.labels[v]) for v in tour.order) + "\n")
    return OK if rep.meets_bound() is not False else DIAGNOSTIC


def cmd_classify(a, out):
    G = _instance(a.file)
    out.write(classify(G).report())
    return OK


def cmd_cover(a, out):
    G = _instance(a.file)
    cls = classify(G)
    C1, _ = compute_c1(G, cls)
    out.write(preprocess_alternating(C1, cls).describe(G))
    return OK


def cmd_multigraph(a, out):
    G = _instance(a.file)
    plan = _plan(G)
    out.write(plan.describe())
    return OK if plan.bound_ok() else DIAGNOSTIC


def cmd_color(a, out):
    G = _instance(a.file)
    plan = _plan(G)
    cycles, paths = plan.C1.paths_and_cycles()
    try:
        res = color_multigraph(plan.mult.mult, cycles, paths, seed=a.seed)
    except Uncolorable:
        plan = reoptimize(plan)
        if plan is None:
            raise
        res = color_multigraph(plan.mult.mult, cycles, paths, seed=a.seed)
    lab = G.labels
    col = res.coloring
    ws = class_weights(col, plan.mult.weight)
    out.write(f"route={res.route}\n")
    out.write(f"g1_weight={G.unscaled(plan.weight)}\n")
    for k in range(1, PALETTE + 1):
        es = " ".join(f"({lab[u]},{lab[v]})" for (u, v), cs in sorted(col.items()) if k in cs)
        out.write(f"class {k} weight={G.unscaled(ws[k - 1])} {es}".rstrip() + "\n")
    best = max(range(PALETTE), key=lambda i: (ws[i], -i)) + 1
    out.write(f"argmax={best} weight={G.unscaled(ws[best - 1])}\n")
    for (u, v), cs in sorted(col.items()):
        out.write(f"edge {lab[u]} {lab[v]} colors {','.join(map(str, sorted(cs)))}\n")
    return OK


def _edge_lines(text: str, key: str) -> dict:
    """``edge u v <key> value ...`` lines; vertex ids are kept as strings."""
    out = {}
    for ln in text.splitlines():
        tok = ln.split()
        if len(tok) >= 5 and tok[0] == "edge" and tok[3] == key:
            out[(tok[1], tok[2])] = tok[4]
    return out


def cmd_check(a, out):
    mult = {e: int(k) for e, k in _edge_lines(_read(a.g1), "mult").items()}
    if not mult:
        raise UsageError(f"{a.g1}: no 'edge u v mult k' lines")
    try:
        col = {e: frozenset(int(c) for c in cs.split(",") if c)
               for e, cs in _edge_lines(_read(a.coloring), "colors").items()}
    except ValueError as exc:
        raise UsageError(f"{a.coloring}: {exc}") from None
    bad = check_coloring(mult, col)
    if bad is None:
        out.write("valid\n")
        return OK
    out.write(f"invalid {bad}\n")
    return DIAGNOSTIC


def cmd_oracle(a, out):
    G = _instance(a.file)
    opt, order = held_karp_opt(G, a.cap, with_tour=True)
    out.write(" ".join(str(G.labels[v]) for v in order) + "\n")
    out.write(f"{G.unscaled(opt)}\n")
    return OK


def cmd_gen(a, out):
    out.write(save_instance(random_instance(a.n, a.wmax, a.seed, a.family)))
    return OK


def _int_range(text: str) -> list[int]:
    """``4-10``, ``4,6,8`` or a mix."""
    vals = []
    for part in text.split(","):
        if not part:
            continue
        if "-" in part:
            lo, hi = part.split("-", 1)
            vals += range(int(lo), int(hi) + 1)
        else:
            vals.append(int(part))
    return vals


def cmd_bench(a, out):
    families = FAMILIES if a.family == "all" else [a.family]
    table = bench(families, _int_range(a.sizes), range(a.seed0, a.seed0 + a.seeds),
                  a.wmax, a.jobs)
    out.write(table.format())
    return DIAGNOSTIC if table.failures() else OK


def cmd_ssp(a, out):
    strings = [ln.strip() for ln in _read(a.file).splitlines() if ln.strip()]
    res = ssp_solve(strings, seed=a.seed)
    out.write(res.superstring + "\n")
    out.write(f"length={len(res.superstring)}\n")
    out.write(f"compression={res.compression}\n")
    if a.exact:
        best, shortest = optimal_compression(strings)
        out.write(f"optimal_compression={best}\n")
        out.write(f"length_ratio={len(res.superstring) / len(shortest):.6f}\n")
        out.write(f"length_ratio_bound={float(LENGTH_RATIO_BOUND):.6f}\n")
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="maxatsp", description="7/10-approximation for maximum asymmetric TSP")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    def with_file(name, fn, help_):
        s = sub.add_parser(name, help=help_)
        s.add_argument("file", help="instance file (matrix or edge list), '-' for stdin")
        s.set_defaults(fn=fn)
        return s

    s = with_file("solve", cmd_solve, "print a tour and its weight")
    s.add_argument("--report", action="store_true", help="append the key=value report")
    s.add_argument("--no-oracle", dest="oracle", action="store_false")
    s.add_argument("--seed", type=int, default=0)
    s = with_file("report", cmd_report, "ratio report against the exact optimum")
    s.add_argument("--seed", type=int, default=0)
    with_file("classify", cmd_classify, "classes of the cycles of C_max")
    with_file("cover", cmd_cover, "the relaxed cycle cover C1")
    with_file("multigraph", cmd_multigraph, "the multigraph G1")
    s = with_file("color", cmd_color, "path-20-coloring of G1")
    s.add_argument("--seed", type=int, default=0)
    s = sub.add_parser("check", help="verify a coloring file against a multigraph file")
    s.add_argument("g1")
    s.add_argument("coloring")
    s.set_defaults(fn=cmd_check)
    s = with_file("oracle", cmd_oracle, "exact optimum by Held-Karp")
    s.add_argument("--cap", type=int, default=HK_CAP)
    s = sub.add_parser("gen", help="generate an instance")
    s.add_argument("--family", choices=FAMILIES, default="uniform")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--wmax", type=int, default=100)
    s.set_defaults(fn=cmd_gen)
    s = sub.add_parser("bench", help="ratios over generated instances")
    s.add_argument("--family", choices=FAMILIES + ("all",), default="uniform")
    s.add_argument("--sizes", default="4-12", help="e.g. 4-12 or 5,8,11")
    s.add_argument("--seeds", type=int, default=10, help="number of seeds per size")
    s.add_argument("--seed0", type=int, default=0)
    s.add_argument("--wmax", type=int, default=100)
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(fn=cmd_bench)
    s = sub.add_parser("ssp", help="shortest superstring, one string per line")
    s.add_argument("file")
    s.add_argument("--exact", action="store_true", help="also compare with the best order")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(fn=cmd_ssp)
    return p


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args, out)
    except (UsageError, SspError, OracleRefused) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except (Uncolorable, ColoringFailed, BuildError, RelaxedCoverError, RatioViolation) as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return DIAGNOSTIC


if __name__ == "__main__":
    sys.exit(main())
