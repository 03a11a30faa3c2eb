"""Command-line front end.

Exit codes: 0 when a question was decided (or a command succeeded), 2 when the
search budget ran out, 1 on any error including a packing that fails to verify.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .erdos_posa import ExtractionFailed, cycles_or_fvs
from .generators import MODELS, generate
from .girth import greedy_fvs, shortest_cycle_with_fvs
from .graphio import GraphFormatError, emit_graph, parse_graph
from .multigraph import MultiGraph, is_fvs, verify_packing
from .pipeline import STRATEGIES, SolveConfig, decision_json, solve
from .reduce import reduce

EXIT_OK, EXIT_ERROR, EXIT_INCONCLUSIVE = 0, 1, 2


class CliError(Exception):
    pass


def _read_graph(path: str) -> MultiGraph:
    data = sys.stdin.buffer.read() if path == "-" else Path(path).read_bytes()
    return parse_graph(data)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _one_based(cycles) -> list[list[int]]:
    return [[v + 1 for v in c] for c in cycles]


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _int_list(text: str) -> list[int]:
    try:
        out = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not out:
        raise argparse.ArgumentTypeError("empty list")
    return out


def _config(args) -> SolveConfig:
    return SolveConfig(strategy=args.strategy, budget=args.budget, c_override=args.c_override)


# -- subcommands ---------------------------------------------------------------


def cmd_solve(args) -> int:
    g = _read_graph(args.graph)
    d = solve(g, args.k, _config(args))
    report = decision_json(d, args.c_override)
    if args.json:
        print(_dump(report))
    else:
        print(d.decision)
        for cyc in report["packing"] or []:
            print(" ".join(map(str, cyc)))
        if args.c_override is not None:
            print(f"# test-only c override: {args.c_override}")
    return EXIT_INCONCLUSIVE if d.decision == "inconclusive" else EXIT_OK


def cmd_decide(args) -> int:
    g = _read_graph(args.graph)
    d = solve(g, args.k, _config(args))
    if args.json:
        out = {"decision": d.decision, "k": d.k}
        if args.c_override is not None:
            out["test_only_c_override"] = args.c_override
        print(_dump(out))
    else:
        print(d.decision)
    return EXIT_INCONCLUSIVE if d.decision == "inconclusive" else EXIT_OK


def cmd_reduce(args) -> int:
    g = _read_graph(args.graph)
    res = reduce(g)
    red = res.reduced
    survivors = [v + 1 for v in red.vertices]
    if args.json:
        print(_dump({"n": len(red), "edges": [[u + 1, v + 1, m] for u, v, m in red.edges()],
                     "survivors": survivors}))
    else:
        note = "reduced graph; input vertices kept: " + (" ".join(map(str, survivors)) or "none")
        sys.stdout.buffer.write(emit_graph(red, comment=note))
    return EXIT_OK


def cmd_girth(args) -> int:
    g = _read_graph(args.graph)
    cyc = shortest_cycle_with_fvs(g, greedy_fvs(g), check=False)
    value = None if cyc is None else len(cyc)
    if args.json:
        print(_dump({"girth": value, "cycle": None if cyc is None else [v + 1 for v in cyc]}))
    else:
        print("inf" if value is None else value)
        if cyc is not None:
            print(" ".join(str(v + 1) for v in cyc))
    return EXIT_OK


def cmd_epfvs(args) -> int:
    g = _read_graph(args.graph)
    try:
        out = cycles_or_fvs(g, args.k, args.c_override)
    except ExtractionFailed as exc:
        raise CliError(f"internal error: cycle extraction failed: {exc}") from None
    report = {"k": args.k, "route": out.route, "c": out.c,
              "cycles": None if out.cycles is None else _one_based(out.cycles),
              "fvs": None if out.fvs is None else sorted(v + 1 for v in out.fvs)}
    if args.c_override is not None:
        report["test_only_c_override"] = args.c_override
    if out.cycles is not None and not verify_packing(g, out.cycles, args.k):
        raise CliError("internal error: reported cycles do not certify")
    if out.fvs is not None and not is_fvs(g, out.fvs):
        raise CliError("internal error: reported set is not a feedback vertex set")
    if args.json:
        print(_dump(report))
    elif out.cycles is not None:
        print(f"cycles ({out.route})")
        for cyc in report["cycles"]:
            print(" ".join(map(str, cyc)))
    else:
        print(f"fvs ({out.route}, size {len(out.fvs)})")
        print(" ".join(map(str, report["fvs"])))
    return EXIT_OK


def _params(items: list[str]) -> dict[str, int]:
    out = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep:
            raise CliError(f"model parameter {item!r} must look like key=value")
        try:
            out[key] = int(value)
        except ValueError:
            raise CliError(f"model parameter {key!r} must be an integer") from None
    return out


def cmd_gen(args) -> int:
    params = _params(args.params)
    g = generate(args.model, params, args.seed)
    desc = " ".join(f"{k}={v}" for k, v in sorted(params.items()))
    data = emit_graph(g, comment=f"{args.model} {desc} seed={args.seed}")
    if args.output:
        Path(args.output).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
    return EXIT_OK


def cmd_verify(args) -> int:
    g = _read_graph(args.graph)
    raw = json.loads(Path(args.packing).read_text())
    if isinstance(raw, dict):
        raw = raw.get("packing")
    if not isinstance(raw, list) or not all(isinstance(c, list) for c in raw):
        raise CliError("packing file must hold a list of cycles or a solve report with one")
    try:
        cycles = [[int(v) - 1 for v in c] for c in raw]
    except (TypeError, ValueError):
        raise CliError("cycle entries must be integers") from None
    k = len(cycles) if args.k is None else args.k
    ok = verify_packing(g, cycles, k)
    if args.json:
        print(_dump({"valid": ok, "k": k}))
    else:
        print("valid" if ok else "invalid")
    return EXIT_OK if ok else EXIT_ERROR


def _bench_params(model: str, n: int) -> dict[str, int]:
    if model == "gnm":
        return {"n": n, "m": min(n * (n - 1) // 2, (3 * n) // 2)}
    if model == "disjoint_cycles":
        return {"count": max(1, n // 3), "len": 3}
    if model == "theta":
        return {"strands": 3, "len": max(1, (n - 2) // 3 + 1)}
    if model == "grid":
        return {"rows": 2, "cols": max(1, n // 2)}
    return {"n": n, "girth": 5}


def cmd_bench(args) -> int:
    from .report import plot_runtime, write_csv

    models = [m.strip() for m in args.models.split(",") if m.strip()]
    for m in models:
        if m not in MODELS:
            raise CliError(f"unknown model {m!r}; choose from {', '.join(MODELS)}")
    strategies = [s.strip() for s in args.strategies.split(",") if s.strip()]
    for s in strategies:
        if s not in STRATEGIES:
            raise CliError(f"unknown strategy {s!r}")
    rows = []
    for model in models:
        for n in args.sizes:
            params = _bench_params(model, n)
            for rep in range(args.repeats):
                seed = args.seed + rep
                g = generate(model, params, seed)
                for k in args.k:
                    for strat in strategies:
                        cfg = SolveConfig(strategy=strat, budget=args.budget, c_override=args.c_override)
                        d = solve(g, k, cfg)
                        rows.append({
                            "model": model,
                            "params": " ".join(f"{a}={b}" for a, b in sorted(params.items())),
                            "seed": seed, "n": len(g), "m": g.num_edges(), "k": k,
                            "strategy": strat, "decision": d.decision,
                            **{key: d.stats[key] for key in ("instances_tried", "s_size", "reduce_size", "elapsed_ms")},
                        })
    out = Path(args.out)
    csv_path = write_csv(rows, out / "bench.csv", delimiter=args.delimiter)
    png_path = plot_runtime(rows, out / "bench.png")
    print(csv_path)
    print(png_path)
    return EXIT_OK


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cyclepack", description="Vertex-disjoint cycle packing in multigraphs.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def solver_flags(sp, need_k=True):
        sp.add_argument("graph", help="graph file, or - for stdin")
        sp.add_argument("--k", type=_positive, required=need_k)
        sp.add_argument("--strategy", choices=STRATEGIES, default="auto")
        sp.add_argument("--budget", type=_positive, default=None,
                        help="maximum number of guessed instances (default: exhaustive)")
        sp.add_argument("--seed", type=int, default=0, help="accepted for reproducible scripts; the solver is deterministic")
        sp.add_argument("--c-override", type=_positive, default=None,
                        help="testing only: replace the cycle-or-FVS constant (marked in the output)")
        sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("solve", help="decide and print a certified packing")
    solver_flags(sp)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("decide", help="print only yes/no/inconclusive")
    solver_flags(sp)
    sp.set_defaults(func=cmd_decide)

    sp = sub.add_parser("reduce", help="apply the reduction rules and print the result")
    sp.add_argument("graph")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("girth", help="length of a shortest cycle")
    sp.add_argument("graph")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_girth)

    sp = sub.add_parser("epfvs", help="k disjoint cycles or a small feedback vertex set")
    sp.add_argument("graph")
    sp.add_argument("--k", type=_positive, required=True)
    sp.add_argument("--c-override", type=_positive, default=None)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_epfvs)

    sp = sub.add_parser("gen", help="generate an instance")
    sp.add_argument("model", choices=MODELS)
    sp.add_argument("params", nargs="*", help="key=value pairs, e.g. n=10 m=15")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("verify", help="check a packing against a graph")
    sp.add_argument("graph")
    sp.add_argument("packing", help="JSON list of 1-based cycles, or a solve --json report")
    sp.add_argument("--k", type=_positive, default=None)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("bench", help="timing sweep written as CSV plus a PNG figure")
    sp.add_argument("--models", default="gnm,disjoint_cycles")
    sp.add_argument("--sizes", type=_int_list, default=[6, 8, 10])
    sp.add_argument("--k", type=_int_list, default=[1, 2])
    sp.add_argument("--strategies", default="ie,paper")
    sp.add_argument("--repeats", type=_positive, default=2)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--budget", type=_positive, default=None)
    sp.add_argument("--c-override", type=_positive, default=None)
    sp.add_argument("--delimiter", default=",")
    sp.add_argument("--out", default="bench_out")
    sp.set_defaults(func=cmd_bench)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GraphFormatError, CliError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"cyclepack: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
