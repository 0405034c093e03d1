"""Command-line front end; every subcommand writes JSON (or CSV) to stdout.

Exit codes: 0 success, 1 invalid arguments, 2 computational failure (a JSON
error object is printed on stdout).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import time
from fractions import Fraction

from . import __version__
from .capacity import MODELS, CapacityQuery, capacity_report
from .errors import InvalidSpec, RainbowError
from .families import FamilySpec, generate, graph_stats
from .graph import as_fraction, dump_graph, fraction_str, graph_to_dict, load_graph
from .hierarchy import compare_to_grid, hierarchy_rainbow_time, kn_hierarchy_rainbow_time
from .isoperimetric import rainbow_time_exact, rainbow_time_spectral, unrestricted_rainbow_time
from .protocol import default_k, run_protocol, verify_trace

log = logging.getLogger("rainbowbench")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _alpha(text: str):
    parts = [p for p in text.split(",") if p.strip()]
    try:
        vals = [as_fraction(p) for p in parts]
    except RainbowError:
        raise argparse.ArgumentTypeError(f"cannot parse alpha {text!r}")
    if not vals:
        raise argparse.ArgumentTypeError("alpha is empty")
    return vals[0] if len(vals) == 1 else vals


def _rational(text: str) -> Fraction:
    try:
        return as_fraction(text)
    except RainbowError:
        raise argparse.ArgumentTypeError(f"cannot parse number {text!r}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="rainbowbench", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--meta", action="store_true", help="write run metadata (timestamps) to stderr")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="generate a family graph as Graph JSON")
    g.add_argument("--family", required=True,
                   choices=["complete", "star", "path", "cycle", "grid", "hierarchy"])
    g.add_argument("--params", required=True, type=_int_list,
                   help="n; grid dims like 3,4; hierarchy n,k")
    g.add_argument("--alpha", type=_alpha, help="hierarchy ratio, or one weight per level")
    g.add_argument("--base", default="complete", help="hierarchy base family")
    g.add_argument("--out", help="output file (default stdout)")

    r = sub.add_parser("rainbow", help="rainbow time of a graph")
    r.add_argument("file")
    r.add_argument("--method", choices=["exact", "spectral", "both"], default="both")
    r.add_argument("--no-prune", action="store_true", help="search every subset, not just connected ones")
    r.add_argument("--max-n", type=int, default=None)

    u = sub.add_parser("urainbow", help="unrestricted rainbow time about a root")
    u.add_argument("file")
    u.add_argument("--root", type=int, required=True)
    u.add_argument("--max-n", type=int, default=None)

    c = sub.add_parser("capacity", help="entanglement capacity across a bipartition")
    c.add_argument("file")
    c.add_argument("--set", dest="vset", required=True, type=_int_list)
    c.add_argument("--model", required=True, choices=list(MODELS))
    dur = c.add_mutually_exclusive_group(required=True)
    dur.add_argument("--rounds", type=int)
    dur.add_argument("--time", type=float)

    pr = sub.add_parser("protocol", help="run the max-flow pairing protocol")
    pr.add_argument("file")
    pr.add_argument("--f", dest="fset", required=True, type=_int_list)
    pr.add_argument("--k", dest="kset", type=_int_list,
                    help="partner set; default is the |F| lowest-id vertices outside F")
    pr.add_argument("--verify", action="store_true")
    pr.add_argument("--max-n", type=int, default=None)

    h = sub.add_parser("hier-eval", help="closed-form rainbow time of a K_n hierarchy")
    h.add_argument("--base-n", type=int, required=True)
    h.add_argument("--levels", type=int, required=True)
    h.add_argument("--alpha", type=_rational, required=True)
    h.add_argument("--compare-grid", type=int, metavar="D")

    t = sub.add_parser("table", help="CSV of rainbow time, total weight and max degree")
    t.add_argument("--families", required=True,
                   help="comma list from complete,star,path,cycle,grid,grid1,grid3 (grid = 2-D)")
    t.add_argument("--sizes", required=True, type=_int_list,
                   help="n for most families; side length for grids")
    t.add_argument("--max-n", type=int, default=None)
    return p


def _emit(payload) -> None:
    sys.stdout.write(json.dumps(payload))
    sys.stdout.write("\n")


def _cmd_gen(args) -> None:
    alpha = args.alpha
    spec = FamilySpec(args.family, tuple(args.params), alpha=alpha, base=args.base)
    graph = generate(spec)
    if args.out:
        dump_graph(graph, args.out)
        log.info("wrote %s (%d vertices, %d edges)", args.out, graph.n, len(graph.edges))
    else:
        _emit(graph_to_dict(graph))


def _cmd_rainbow(args) -> None:
    graph = load_graph(args.file)
    if args.method == "spectral":
        report = rainbow_time_spectral(graph)
    else:
        report = rainbow_time_exact(graph, prune_connected=not args.no_prune, max_n=args.max_n,
                                    with_spectral=args.method == "both")
    _emit(report.to_dict())


def _cmd_urainbow(args) -> None:
    graph = load_graph(args.file)
    if not 0 <= args.root < graph.n:
        raise UsageError(f"--root {args.root} is not a vertex of a {graph.n}-vertex graph")
    _emit(unrestricted_rainbow_time(graph, args.root, max_n=args.max_n).to_dict())


def _cmd_capacity(args) -> None:
    graph = load_graph(args.file)
    if args.model == "hamiltonian":
        if args.time is None:
            raise UsageError("the hamiltonian model takes --time")
        duration = args.time
    else:
        if args.rounds is None:
            raise UsageError(f"the {args.model} model takes --rounds")
        duration = args.rounds
    if duration < 0:
        raise UsageError("duration must be nonnegative")
    _emit(capacity_report(CapacityQuery(graph, frozenset(args.vset), args.model, duration)))


def _cmd_protocol(args) -> None:
    graph = load_graph(args.file)
    f = sorted(set(args.fset))
    k = sorted(set(args.kset)) if args.kset else list(default_k(graph, f))
    trace = run_protocol(graph, f, k)
    payload = trace.to_dict()
    payload["F"] = f
    payload["K"] = k
    if args.verify:
        tau = rainbow_time_exact(graph, prune_connected=True, max_n=args.max_n, with_spectral=False).tau
        payload["verification"] = verify_trace(graph, f, k, trace, tau).to_dict()
    _emit(payload)


def _cmd_hier_eval(args) -> None:
    n, k, alpha = args.base_n, args.levels, args.alpha
    if n < 2 or k < 2 or alpha <= 0:
        raise UsageError("need --base-n >= 2, --levels >= 2 and --alpha > 0")
    if n % 2 == 0:
        ev = kn_hierarchy_rainbow_time(n, k, alpha)
    else:
        ev = hierarchy_rainbow_time(Fraction(1, (n + 1) // 2), 1, n, k, alpha)
    payload = {"n": n, "k": k, "alpha": fraction_str(alpha), "hierarchy": ev.to_dict()}
    if args.compare_grid is not None:
        if args.compare_grid < 1:
            raise UsageError("--compare-grid needs d >= 1")
        payload["comparison"] = compare_to_grid(n, alpha, k, args.compare_grid).to_dict()
    _emit(payload)


_TABLE_FAMILIES = {
    "complete": lambda s: (f"K_{s}", FamilySpec("complete", (s,))),
    "star": lambda s: (f"S_{s}", FamilySpec("star", (s,))),
    "path": lambda s: (f"P_{s}", FamilySpec("path", (s,))),
    "cycle": lambda s: (f"C_{s}", FamilySpec("cycle", (s,))),
    "grid1": lambda s: (f"grid_{s}", FamilySpec("grid", (s,))),
    "grid": lambda s: (f"grid_{s}x{s}", FamilySpec("grid", (s, s))),
    "grid3": lambda s: (f"grid_{s}x{s}x{s}", FamilySpec("grid", (s, s, s))),
}


def _cmd_table(args) -> None:
    families = [x.strip() for x in args.families.split(",") if x.strip()]
    unknown = [x for x in families if x not in _TABLE_FAMILIES]
    if unknown:
        raise UsageError(f"unknown table families: {', '.join(unknown)}")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["name", "N", "tau", "total_weight", "max_degree"])
    for fam in families:
        for size in args.sizes:
            name, spec = _TABLE_FAMILIES[fam](size)
            graph = generate(spec)
            tau = rainbow_time_exact(graph, prune_connected=True, max_n=args.max_n, with_spectral=False).tau
            stats = graph_stats(graph)
            writer.writerow([name, graph.n, fraction_str(tau),
                             fraction_str(stats["total_edge_weight"]), fraction_str(stats["max_degree"])])
    sys.stdout.write(buf.getvalue())


_COMMANDS = {
    "gen": _cmd_gen,
    "rainbow": _cmd_rainbow,
    "urainbow": _cmd_urainbow,
    "capacity": _cmd_capacity,
    "protocol": _cmd_protocol,
    "hier-eval": _cmd_hier_eval,
    "table": _cmd_table,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(levelname)s %(message)s")
    started = time.time()
    try:
        _COMMANDS[args.command](args)
    except (UsageError, InvalidSpec) as exc:
        sys.stderr.write(f"rainbowbench: error: {exc}\n")
        return 1
    except (RainbowError, OSError, json.JSONDecodeError) as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)})
        return 2
    if args.meta:
        sys.stderr.write(json.dumps({"command": args.command, "started": started,
                                     "elapsed_s": time.time() - started}) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
