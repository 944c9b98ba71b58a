"""``bipwhc`` command line.

Exit status: 0 when the command completes without a soundness violation,
1 for usage, parse or size errors, 2 when a violation (or a sandwich or
containment discrepancy) is found; the counterexample is printed.
"""
from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .closure import b_closure
from .conditions import ALL_CONDITIONS, DEFAULT_BAND, full_report, parse_condition_ids
from .families import FAMILIES, FamilySpec
from .graph import GraphError, vertex_label
from .graphfile import GraphFileError, read_graph, write_graph_file
from .oracle import OracleSizeError, is_weakly_hc
from .report import FORMATS, emit_report, to_json
from .spectral import (
    DEFAULT_TOL,
    ConvergenceError,
    adjacency_spectral_radius,
    signless_laplacian_spectral_radius,
    spectral_bounds_report,
)
from .sweep import SWEEP_CONDITIONS, SweepRefused, min_degree_at_least, verify_implication

EXIT_OK, EXIT_USAGE, EXIT_VIOLATION = 0, 1, 2
DEFAULT_SEED = 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse exits with 2, which is reserved here
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return value


def _common(p: argparse.ArgumentParser, spectral: bool = False, seed: bool = False) -> None:
    p.add_argument("--format", choices=FORMATS, default="text", help="output format (default: %(default)s)")
    if spectral:
        p.add_argument("--tol", type=_positive_float, default=DEFAULT_TOL,
                       help="eigenvalue tolerance (default: %(default)g)")
        p.add_argument("--band", type=_positive_float, default=DEFAULT_BAND,
                       help="relative decision band around spectral thresholds (default: %(default)g)")
    if seed:
        p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="random seed (default: %(default)s)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bipwhc", description="Sufficient conditions for weakly Hamilton-connected "
                                                "balanced bipartite graphs, with a brute-force oracle.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", help="run the sufficient-condition checkers on a graph file")
    p.add_argument("file")
    p.add_argument("--oracle", action="store_true", help="also run the brute-force oracle")
    p.add_argument("--condition", action="append", metavar="ID",
                   choices=[c.value for c in ALL_CONDITIONS] + ["all"],
                   help="condition id to run, repeatable (default: all)")
    _common(p, spectral=True)

    p = sub.add_parser("construct", help="write a family graph in graph-file format")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int, help="block parameter (Q, R, S)")
    p.add_argument("--m", type=int, help="second part size for K (default: n)")
    p.add_argument("--complement", action="store_true", help="emit the quasi-complement")
    p.add_argument("-o", "--output", help="output path (default: stdout)")
    _common(p)

    p = sub.add_parser("oracle", help="decide weak Hamilton-connectedness by exhaustive search")
    p.add_argument("file")
    p.add_argument("--witnesses", action="store_true", help="print a Hamilton path for every pair")
    _common(p)

    p = sub.add_parser("closure", help="print the degree-sum n+2 closure and the edges it adds")
    p.add_argument("file")
    _common(p)

    p = sub.add_parser("spectrum", help="spectral radii, bound checks and convergence data")
    p.add_argument("file")
    _common(p, spectral=True)

    p = sub.add_parser("verify", help="sweep graphs and confirm every certificate with the oracle")
    p.add_argument("--condition", required=True, choices=SWEEP_CONDITIONS)
    p.add_argument("--n", type=int, required=True)
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exhaustive", action="store_true", help="every graph on n+n vertices (n <= 4)")
    mode.add_argument("--random", type=int, metavar="S", help="S seeded random graphs")
    p.add_argument("--min-degree", type=int, default=0, help="only keep graphs with this minimum degree")
    p.add_argument("--workers", type=int, default=1, help="worker processes")
    p.add_argument("--allow-large", action="store_true", help="permit exhaustive n > 4 (hours)")
    _common(p, spectral=True, seed=True)
    return parser


def _path_text(path) -> str:
    return " ".join(vertex_label(part, i) for part, i in path)


def _cmd_check(args) -> int:
    g = read_graph(args.file)
    report = full_report(g, run_oracle=args.oracle, ids=parse_condition_ids(args.condition),
                         tol=args.tol, band=args.band, raise_on_violation=False)
    sys.stdout.write(emit_report(report, args.format))
    return EXIT_VIOLATION if report.violation else EXIT_OK


def _cmd_construct(args) -> int:
    spec = FamilySpec(args.family, args.n, t=args.t, m=args.m, complement=args.complement)
    g = spec.build()
    if args.format == "structured":
        text = to_json({"family": spec.label(), "a": g.a, "b": g.b, "e": g.edge_count,
                        "edges": [[i + 1, j + 1] for i, j in g.edges()]})
    else:
        text = write_graph_file(g, comment=spec.label())
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_oracle(args) -> int:
    g = read_graph(args.file)
    res = is_weakly_hc(g, witnesses=args.witnesses)
    fail = None if res.failing_pair is None else [vertex_label("x", res.failing_pair[0]),
                                                   vertex_label("y", res.failing_pair[1])]
    if args.format == "structured":
        doc = {"weakly_hc": res.weakly_hc, "failing_pair": fail}
        if args.witnesses:
            doc["witness_paths"] = {f"{vertex_label('x', x)}-{vertex_label('y', y)}": _path_text(p).split()
                                    for (x, y), p in sorted(res.witness_paths.items())}
        sys.stdout.write(to_json(doc))
    else:
        if res.weakly_hc:
            print("weakly Hamilton-connected")
        else:
            print(f"not weakly Hamilton-connected: no Hamilton path {fail[0]} .. {fail[1]}")
        for (x, y), p in sorted(res.witness_paths.items()):
            print(f"{vertex_label('x', x)}-{vertex_label('y', y)}: {_path_text(p)}")
    return EXIT_OK


def _cmd_closure(args) -> int:
    g = read_graph(args.file)
    trace = b_closure(g)
    added = [[vertex_label("x", i), vertex_label("y", j)] for i, j in trace.added_edges]
    if args.format == "structured":
        sys.stdout.write(to_json({"added_edges": added, "rounds": trace.rounds,
                                  "complete": trace.result.edge_count == g.a * g.b,
                                  "closure": [[i + 1, j + 1] for i, j in trace.result.edges()]}))
    else:
        print(f"added {len(added)} edge(s) in {trace.rounds} round(s)")
        for x, y in added:
            print(f"  {x} {y}")
        sys.stdout.write(write_graph_file(trace.result, comment="closure"))
    return EXIT_OK


def _cmd_spectrum(args) -> int:
    g = read_graph(args.file)
    rho = adjacency_spectral_radius(g, args.tol)
    q = signless_laplacian_spectral_radius(g, args.tol)
    bounds = spectral_bounds_report(g, args.tol)
    doc = {
        "rho": {"value": rho.value, "residual": rho.residual, "iterations": rho.iterations, "method": rho.method},
        "q": {"value": q.value, "residual": q.residual, "iterations": q.iterations, "method": q.method},
        "tolerance": args.tol,
        "bounds": {
            "rho_upper_sqrt_e": {"bound": bounds.rho_upper, "holds": bounds.rho_upper_ok},
            "q_upper_e_over_n_plus_n": {"bound": bounds.q_upper, "holds": bounds.q_upper_ok},
            "rho_lower_min_edge": {"bound": bounds.rho_lower, "holds": bounds.rho_lower_ok},
            "q_lower_min_edge": {"bound": bounds.q_lower, "holds": bounds.q_lower_ok},
        },
    }
    if args.format == "structured":
        sys.stdout.write(to_json(doc))
    else:
        print(f"rho = {rho.value:.12g}   (residual {rho.residual:.3g}, {rho.iterations} iterations, {rho.method})")
        print(f"q   = {q.value:.12g}   (residual {q.residual:.3g}, {q.iterations} iterations, {q.method})")
        for name, item in doc["bounds"].items():
            bound = "n/a" if item["bound"] is None else f"{item['bound']:.12g}"
            holds = "n/a" if item["holds"] is None else ("holds" if item["holds"] else "FAILS")
            print(f"  {name:<24} {bound:>16}  {holds}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    mode = "exhaustive" if args.exhaustive else "random"
    report = verify_implication(
        args.condition, args.n, mode,
        samples=args.random or 0, seed=args.seed,
        filter=min_degree_at_least(args.min_degree) if args.min_degree > 0 else None,
        workers=args.workers, allow_large=args.allow_large, tol=args.tol, band=args.band,
    )
    sys.stdout.write(emit_report(report, args.format))
    return EXIT_OK if report.ok else EXIT_VIOLATION


_COMMANDS = {
    "check": _cmd_check,
    "construct": _cmd_construct,
    "oracle": _cmd_oracle,
    "closure": _cmd_closure,
    "spectrum": _cmd_spectrum,
    "verify": _cmd_verify,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (GraphFileError, GraphError, OracleSizeError, SweepRefused, OSError, ValueError) as exc:
        print(f"bipwhc {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConvergenceError as exc:
        print(f"bipwhc {args.command}: eigen-solver failure: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
