"""Command-line interface: ``equilist <command> ...``.

Exit codes: 0 success, 1 invalid coloring / no coloring / not in class B,
2 bad input, 3 internal invariant violation. Reports go to stdout as JSON,
diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from .coloring import Instance, check_SE, is_equitable_partition, load_coloring, load_instance
from .digraph import PartialState, to_dot
from .errors import (
    EquilistError,
    HypothesisViolated,
    InternalInvariantViolation,
    InvalidInstance,
    UnsupportedParameter,
)
from .generators import Certificate, gen_lists, gen_stacked_planar, gen_subdivision, instance_json
from .graph import DEFAULT_B_BUDGET, Graph, load_graph, verify_class_B
from .oracle import DEFAULT_BUDGET, oracle_se_color
from .solver import solve

log = logging.getLogger("equilist")

EXIT_OK, EXIT_INVALID, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3

NAMED_GRAPHS = {
    "K5": lambda: Graph.from_edges(5, [(i, j) for i in range(5) for j in range(i + 1, 5)]),
    "K33": lambda: Graph.from_edges(6, [(i, j) for i in range(3) for j in range(3, 6)]),
}


def default_seed() -> int:
    raw = os.environ.get("EQUILIST_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise InvalidInstance(f"EQUILIST_SEED must be an integer, got {raw!r}")


def _emit(report: dict) -> None:
    sys.stdout.write(json.dumps(report, sort_keys=True) + "\n")


def _write_json(path: str, data: dict) -> None:
    with open(path, "w") as fh:
        json.dump(data, fh, sort_keys=True)
        fh.write("\n")


def _write_trace(path: str, events) -> None:
    with open(path, "w") as fh:
        for ev in events:
            fh.write(json.dumps(ev.to_json(), sort_keys=True) + "\n")


def cmd_solve(args) -> int:
    inst = load_instance(args.input)
    seed = args.seed if args.seed is not None else default_seed()
    try:
        res = solve(inst, record_trace=True)
    except InternalInvariantViolation as exc:
        path = args.trace or (args.output + ".trace.jsonl" if args.output else "equilist-failure.trace.jsonl")
        _write_trace(path, exc.trace)
        print(f"internal invariant violation: {exc} (trace written to {path})", file=sys.stderr)
        _emit({"status": "InternalInvariantViolation", "check": exc.check, "message": str(exc), "trace": path})
        return EXIT_INTERNAL
    if args.output:
        _write_json(args.output, {"colors": res.colors})
    if args.trace:
        _write_trace(args.trace, res.trace)
    rep = check_SE(inst, res.colors)
    out = {"status": "ok", "seed": seed, "valid": rep.valid, "stats": res.stats.to_json()}
    if not args.output:
        out["colors"] = res.colors
    _emit(out)
    return EXIT_OK if rep.valid else EXIT_INVALID


def cmd_verify(args) -> int:
    inst = load_instance(args.input)
    colors = load_coloring(args.coloring)
    rep = check_SE(inst, colors)
    out = rep.to_json()
    ok = rep.valid
    if args.strong:
        eq = is_equitable_partition(inst, colors)
        out["equitable_partition"] = eq
        ok = ok and eq
    _emit(out)
    if not ok:
        print(f"coloring rejected: {rep.kind}", file=sys.stderr)
    return EXIT_OK if ok else EXIT_INVALID


def cmd_gen(args) -> int:
    seed = args.seed if args.seed is not None else default_seed()
    if args.mode == "planar":
        g, cert = gen_stacked_planar(args.n, seed, args.delete_fraction, args.max_degree)
    else:
        if args.base in NAMED_GRAPHS:
            h = NAMED_GRAPHS[args.base]()
        else:
            h = load_graph(args.base)
        g, cert = gen_subdivision(h)
    r = args.r if args.r is not None else max(9, g.max_degree())
    palette = args.palette if args.palette is not None else r
    inst = Instance(g, r, gen_lists(g.n, r, palette, seed))
    data = instance_json(inst, cert)
    if args.output:
        _write_json(args.output, data)
        _emit({"status": "ok", "n": g.n, "m": g.m, "r": r, "max_degree": g.max_degree()})
    else:
        _emit(data)
    return EXIT_OK


def cmd_oracle(args) -> int:
    inst = load_instance(args.input)
    res = oracle_se_color(inst, args.budget)
    _emit(res.to_json())
    return EXIT_OK if res.found else EXIT_INVALID


def cmd_export_h(args) -> int:
    inst = load_instance(args.input)
    colors = load_coloring(args.coloring)
    st = PartialState(inst, colors)
    bad = [v for v in st.colored() if not st.is_proper_at(v)]
    if bad:
        raise InvalidInstance(f"partial coloring is improper or off-list at vertex {bad[0]}")
    dot = to_dot(st)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(dot)
        _emit({"status": "ok", "arcs": len(st.H.witnesses), "output": args.output})
    else:
        sys.stdout.write(dot)
    return EXIT_OK


def cmd_check_b(args) -> int:
    with open(args.input) as fh:
        data = json.load(fh)
    g = Graph.from_json(data)
    cert = Certificate.from_json(data.get("certificate"))
    label = None if args.exhaustive or cert.kind == "None" else cert.kind
    res = verify_class_B(g, args.budget, certificate=label)
    _emit(res.to_json())
    return EXIT_OK if res.in_b else EXIT_INVALID


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="equilist", description="Strongly equitable list coloring for class-B graphs.")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="compute an SE list coloring")
    p.add_argument("-i", "--input", required=True, help="instance JSON")
    p.add_argument("-o", "--output", help="coloring JSON to write")
    p.add_argument("--trace", help="trace JSONL to write")
    p.add_argument("--seed", type=int, help="recorded in the report (default: EQUILIST_SEED or 0)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a coloring")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-c", "--coloring", required=True)
    p.add_argument("--strong", action="store_true", help="also require class sizes floor(n/r) or ceil(n/r)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="generate a certified instance")
    p.add_argument("mode", choices=["planar", "subdivide"])
    p.add_argument("--n", type=int, default=20, help="vertex count (planar)")
    p.add_argument("--delete-fraction", type=float, default=0.0)
    p.add_argument("--max-degree", type=int, help="degree cap (planar)")
    p.add_argument("--base", default="K33", help="K5, K33 or a graph JSON path (subdivide)")
    p.add_argument("--r", type=int, help="list size (default max(9, max degree))")
    p.add_argument("--palette", type=int, help="palette size (default r: plain lists)")
    p.add_argument("--seed", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("oracle", help="exhaustive search")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="node cap")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("export-h", help="DOT rendering of the color digraph of a partial coloring")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-c", "--coloring", required=True, help="colors JSON, null for absent vertices")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_export_h)

    p = sub.add_parser("check-b", help="class-B membership")
    p.add_argument("-i", "--input", required=True, help="graph or instance JSON")
    p.add_argument("--budget", type=int, default=DEFAULT_B_BUDGET, help="largest n checked exhaustively")
    p.add_argument("--exhaustive", action="store_true", help="ignore an embedded certificate")
    p.set_defaults(func=cmd_check_b)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr)
    try:
        return args.func(args)
    except (UnsupportedParameter, HypothesisViolated) as exc:
        print(f"error: {exc}", file=sys.stderr)
        _emit({"status": type(exc).__name__, "message": str(exc)})
        return EXIT_INPUT
    except (InvalidInstance, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except EquilistError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
