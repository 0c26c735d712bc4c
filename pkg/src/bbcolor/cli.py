"""Command-line interface.

Subcommands: gen (fib | random), color, verify, decompose, exact,
check (lower-bound | impossibility), bench.  Graphs travel in the shared
text format; structured results go to stdout as JSON unless
``--format text`` asks for a human summary.

Exit codes: 0 success, 1 verification or validation failure, 2 usage
error or bad parameters, 3 instance too large for an exact operation.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bench as bench_mod
from .coloring import (
    color_best,
    color_direct,
    color_via_decomposition,
    verify_backbone_coloring,
)
from .decompose import rby_decompose_forest
from .errors import (
    BackboneError,
    BenchVerificationError,
    CycleDetected,
    DuplicateEdge,
    GraphFormatError,
    InstanceTooLarge,
    InvalidDecomposition,
    NotATree,
    OrderOutOfRange,
    SearchSpaceTooLarge,
    SelfLoop,
    VertexOutOfRange,
)
from .exact import exact_bbc
from .fibonacci import fib_tree, impossibility_check, lower_bound_certificate
from .generators import DEFAULT_SEED, gen_random_tree
from .graphs import as_tree, format_graph, parse_graph

_TOO_LARGE = (InstanceTooLarge, OrderOutOfRange, SearchSpaceTooLarge)
_INPUT_INVALID = (
    GraphFormatError,
    CycleDetected,
    DuplicateEdge,
    SelfLoop,
    VertexOutOfRange,
    NotATree,
    InvalidDecomposition,
)

_ALGOS = {
    "direct": color_direct,
    "rby": color_via_decomposition,
    "best": color_best,
}


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _write_output(text: str, path: str | None) -> None:
    if path and path != "-":
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _emit(payload: dict, fmt: str, text_renderer) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(text_renderer(payload))


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bbcolor",
        description="Backbone colorings of cliques with forest backbones.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate instance graphs")
    gen_sub = gen.add_subparsers(dest="kind", required=True)
    gen_fib = gen_sub.add_parser("fib", help="Fibonacci tree of a given order")
    gen_fib.add_argument("--order", type=int, required=True)
    gen_fib.add_argument("--output", default=None)
    gen_rand = gen_sub.add_parser("random", help="seeded uniform random tree")
    gen_rand.add_argument("--n", type=int, required=True)
    gen_rand.add_argument("--max-degree", type=int, default=None)
    gen_rand.add_argument("--seed", type=int, default=DEFAULT_SEED)
    gen_rand.add_argument("--output", default=None)

    color = sub.add_parser("color", help="color a clique with the given backbone")
    color.add_argument("--lambda", dest="min_gap", type=int, required=True)
    color.add_argument("--algo", choices=sorted(_ALGOS), default="best")
    color.add_argument("--input", default="-")
    color.add_argument("--format", choices=("json", "text"), default="json")

    verify = sub.add_parser("verify", help="verify a coloring file against a backbone")
    verify.add_argument("--lambda", dest="min_gap", type=int, required=True)
    verify.add_argument("--coloring", required=True)
    verify.add_argument("--input", default="-")
    verify.add_argument("--format", choices=("json", "text"), default="json")

    decomp = sub.add_parser("decompose", help="red-blue-yellow decomposition")
    decomp.add_argument("--k", type=int, required=True)
    decomp.add_argument("--input", default="-")
    decomp.add_argument("--format", choices=("json", "text"), default="json")

    exact = sub.add_parser("exact", help="exact coloring number on small instances")
    exact.add_argument("--lambda", dest="min_gap", type=int, required=True)
    exact.add_argument("--input", default="-")
    exact.add_argument("--format", choices=("json", "text"), default="json")

    check = sub.add_parser("check", help="lower-bound machinery checks")
    check_sub = check.add_subparsers(dest="what", required=True)
    check_lb = check_sub.add_parser("lower-bound", help="certificate for a tree order")
    check_lb.add_argument("--order", type=int, required=True)
    check_lb.add_argument("--lambda", dest="min_gap", type=int, default=None)
    check_lb.add_argument("--format", choices=("json", "text"), default="json")
    check_imp = check_sub.add_parser("impossibility", help="decomposition vs exact value")
    check_imp.add_argument("--lambda", dest="min_gap", type=int, required=True)
    check_imp.add_argument("--l", dest="budget", type=int, required=True)
    check_imp.add_argument("--input", default="-")
    check_imp.add_argument("--format", choices=("json", "text"), default="json")

    bench = sub.add_parser("bench", help="run the timing corpus from a config file")
    bench.add_argument("--config", required=True)
    bench.add_argument("--output-dir", default="bench_out")
    bench.add_argument("--format", choices=("json", "text"), default="json")
    return parser


def _load_coloring(path: str) -> list[int]:
    text = _read_text(path)
    stripped = text.lstrip()
    if stripped.startswith("{"):
        data = json.loads(text)
        return [int(c) for c in data["colors"]]
    colors: dict[int, int] = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        v, c = line.split()
        colors[int(v)] = int(c)
    return [colors[v] for v in sorted(colors)]


def _cmd_gen(args) -> int:
    if args.kind == "fib":
        tree = fib_tree(args.order).tree
    else:
        tree = gen_random_tree(args.n, args.max_degree, seed=args.seed)
    _write_output(format_graph(tree), args.output)
    return 0


def _cmd_color(args) -> int:
    forest = parse_graph(_read_text(args.input))
    coloring = _ALGOS[args.algo](forest, args.min_gap)
    if args.format == "json":
        print(json.dumps(coloring.to_json_dict()))
    else:
        for v, c in enumerate(coloring.colors):
            print(f"{v} {c}")
    return 0


def _cmd_verify(args) -> int:
    forest = parse_graph(_read_text(args.input))
    colors = _load_coloring(args.coloring)
    report = verify_backbone_coloring(forest, args.min_gap, colors)
    _emit(
        report.to_json_dict(),
        args.format,
        lambda p: "ok" if p["ok"] else "\n".join(
            f"{v['kind']}: {v['detail']}" for v in p["violations"]
        ),
    )
    return 0 if report.ok else 1


def _cmd_decompose(args) -> int:
    forest = parse_graph(_read_text(args.input))
    d = rby_decompose_forest(forest, args.k)
    _emit(
        d.to_json_dict(),
        args.format,
        lambda p: f"R={p['R']}\nB={p['B']}\nY={p['Y']}\nk={p['k']} l={p['l']}",
    )
    return 0


def _cmd_exact(args) -> int:
    forest = parse_graph(_read_text(args.input))
    result = exact_bbc(forest, args.min_gap)
    _emit(
        result.to_json_dict(),
        args.format,
        lambda p: f"value {p['value']}, witness {p['witness']}",
    )
    return 0


def _cmd_check(args) -> int:
    if args.what == "lower-bound":
        report = lower_bound_certificate(args.order, args.min_gap)
        _emit(
            report.to_json_dict(),
            args.format,
            lambda p: f"order {p['order']}: {p['regime']}, ok={p['ok']}",
        )
        return 0 if report.ok else 1
    forest = parse_graph(_read_text(args.input))
    tree = as_tree(forest)
    report = impossibility_check(tree, args.min_gap, args.budget)
    _emit(
        report.to_json_dict(),
        args.format,
        lambda p: f"consistent={p['consistent']}: {p['note']}",
    )
    return 0 if report.consistent else 1


def _cmd_bench(args) -> int:
    config = bench_mod.BenchConfig.from_json_dict(json.loads(_read_text(args.config)))
    report = bench_mod.run_bench(config)
    paths = bench_mod.write_report(report, args.output_dir)
    payload = {"report": report.to_json_dict(), "artifacts": paths}
    _emit(
        payload,
        args.format,
        lambda p: f"{len(p['report']['records'])} records, slope "
        f"{p['report']['slope']}, artifacts in {args.output_dir}",
    )
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "gen": _cmd_gen,
        "color": _cmd_color,
        "verify": _cmd_verify,
        "decompose": _cmd_decompose,
        "exact": _cmd_exact,
        "check": _cmd_check,
        "bench": _cmd_bench,
    }
    try:
        return handlers[args.command](args)
    except _TOO_LARGE as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except BenchVerificationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except _INPUT_INVALID as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (BackboneError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
