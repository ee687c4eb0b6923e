"""Command-line entry point.

Exit codes: 0 success / pass / found, 1 check failed / absent / target
missed, 2 usage error, 3 inconclusive (search budget ran out).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .blocks import block_cut_dot, block_decomposition
from .constructions import TruncationParams, build_G, build_H, build_I, half_grid, named_graph
from .flow import InseparableError, max_vertex_disjoint_paths, min_vertex_cut, select_vertices
from .graph import Graph, GraphError
from .io import read_graph, to_dot, to_graph6, to_json
from .minors import BudgetExhausted, Outcome, SearchBudget, enumerate_models, find_minor_model
from .packing import (
    PackingExhausted,
    Reached,
    exact_packing,
    greedy_packing,
    grid_sides,
    packing_upper_bound_by_cut,
)
from .recipe import RecipeError, eval_recipe, parse_recipe
from .verify import (
    negative_control_host,
    verify_lemma1,
    verify_proposition_lower,
    verify_saturation,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def load_graph(spec: str) -> Graph:
    """A file (JSON or graph6) or a built-in name such as ``K5``, ``H:2``
    or ``G:1,1``."""
    if Path(spec).is_file():
        return read_graph(spec)
    try:
        return named_graph(spec)
    except ValueError as exc:
        raise UsageError(f"{spec!r} is neither a readable file nor a known graph: {exc}") from None


def _budget(args) -> SearchBudget:
    return SearchBudget(args.budget) if args.budget else SearchBudget.default()


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# subcommands


def cmd_gen(args) -> int:
    c = args.construction
    if c in ("G", "halfgrid"):
        p = TruncationParams(args.m, args.h)
        g = build_G(p) if c == "G" else half_grid(p)
    elif c == "I":
        g = build_I()
    elif c == "H":
        g = build_H(args.L)
    else:
        g = load_graph(c)
    text = to_graph6(g) + "\n" if args.format == "g6" else to_json(g) + "\n"
    _emit(text, args.out)
    if args.dot:
        Path(args.dot).write_text(to_dot(g))
    return EXIT_OK


def cmd_blocks(args) -> int:
    g = load_graph(args.host)
    bd = block_decomposition(g)
    lines = [f"{len(bd.blocks)} blocks, cut vertices {sorted(bd.cut_vertices)}"]
    lines += [f"B{i}: {sorted(b)}" for i, b in enumerate(bd.blocks)]
    sys.stdout.write("\n".join(lines) + "\n")
    if args.dot:
        Path(args.dot).write_text(block_cut_dot(g, bd))
    return EXIT_OK


def cmd_minor(args) -> int:
    pattern, host = load_graph(args.pattern), load_graph(args.host)
    budget = _budget(args)
    if args.enumerate:
        try:
            models = enumerate_models(pattern, host, args.enumerate, budget)
        except BudgetExhausted as exc:
            sys.stdout.write(_dump({"outcome": "exhausted", "models": [m.to_json_obj() for m in exc.partial]}))
            return EXIT_INCONCLUSIVE
        sys.stdout.write(_dump({"outcome": "enumerated", "models": [m.to_json_obj() for m in models]}))
        return EXIT_OK if models else EXIT_FAIL
    r = find_minor_model(pattern, host, budget)
    doc = {"outcome": r.outcome.value, "expansions": r.expansions}
    if r.model is not None:
        doc["model"] = r.model.to_json_obj()
    sys.stdout.write(_dump(doc))
    return {Outcome.FOUND: EXIT_OK, Outcome.ABSENT: EXIT_FAIL, Outcome.EXHAUSTED: EXIT_INCONCLUSIVE}[r.outcome]


def cmd_paths(args) -> int:
    g = load_graph(args.host)
    try:
        sources = select_vertices(g, args.sources)
        sinks = select_vertices(g, args.sinks)
    except (ValueError, GraphError) as exc:
        raise UsageError(str(exc)) from None
    if not sources or not sinks:
        raise UsageError("source and sink selections must be nonempty")
    family = max_vertex_disjoint_paths(g, sources, sinks)
    doc = {"count": len(family), "paths": [list(p) for p in family.paths]}
    try:
        doc["cut"] = sorted(min_vertex_cut(g, sources, sinks).vertices)
    except InseparableError as exc:
        doc["cut"] = None
        doc["cut_note"] = str(exc)
    sys.stdout.write(_dump(doc))
    return EXIT_OK


def cmd_pack(args) -> int:
    pattern, host = load_graph(args.pattern), load_graph(args.host)
    budget = _budget(args)
    doc: dict = {}
    if args.exact:
        result = exact_packing(pattern, host, args.target, budget)
        if isinstance(result, Reached):
            packing, doc["outcome"], code = result.packing, "reached", EXIT_OK
        elif isinstance(result, PackingExhausted):
            packing, doc["outcome"], code = result.best, "exhausted", EXIT_INCONCLUSIVE
        else:
            packing, doc["outcome"], code = result.best, "upper_bounded", EXIT_FAIL
    else:
        packing = greedy_packing(pattern, host, budget)
        doc["outcome"] = "greedy"
        code = EXIT_OK if len(packing) >= args.target else EXIT_FAIL
    doc["size"] = len(packing)
    doc["models"] = packing.to_json_obj()
    if host.tags is not None:
        left, right = grid_sides(host)
        if left and right:
            doc["cut_bound"] = packing_upper_bound_by_cut(host, left, right)
    sys.stdout.write(_dump(doc))
    return code


def cmd_verify(args) -> int:
    budget = _budget(args)
    if args.check == "lemma1":
        p = TruncationParams(args.m, args.h)
        if args.negative_control:
            report = verify_lemma1(p, budget, host=negative_control_host(p), host_label="mutated G")
        else:
            report = verify_lemma1(p, budget)
    elif args.check == "proposition":
        report = verify_proposition_lower(args.n, args.ray, budget)
    else:
        report = verify_saturation(args.h, range(1, args.m_max + 1), budget)
    sys.stdout.write(report.to_json() + "\n" if args.json else report.to_text())
    return report.status.exit_code


def _read_text(source: str) -> str:
    return sys.stdin.read() if source == "-" else Path(source).read_text()


def cmd_recipe(args) -> int:
    try:
        recipe = parse_recipe(_read_text(args.file))
    except RecipeError as exc:
        sys.stderr.write(f"recipe error: {exc}\n")
        return EXIT_USAGE
    if args.action == "parse":
        sys.stdout.write(str(recipe) + "\n")
        return EXIT_OK
    g = eval_recipe(recipe, TruncationParams(args.m, args.h))
    _emit(to_json(g) + "\n", args.out)
    return EXIT_OK


# parser


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _natural(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="minorlab", description="Graph-minor workbench for half-grid constructions.")
    parser.add_argument("--version", action="version", version=f"minorlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    budget = argparse.ArgumentParser(add_help=False)
    budget.add_argument("--budget", type=_positive, help="max search expansions (default: $MINORLAB_BUDGET or 10^7)")

    p = sub.add_parser("gen", help="write a constructed graph")
    p.add_argument("--construction", required=True, help="G, halfgrid, I, H, or a name such as K5, K33, PATH:L")
    p.add_argument("--m", type=_positive, default=1)
    p.add_argument("--h", type=_natural, default=1)
    p.add_argument("--L", type=_positive, default=1, help="ray path length for H")
    p.add_argument("--format", choices=("json", "g6"), default="json")
    p.add_argument("--out")
    p.add_argument("--dot", help="also write DOT to this file")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("blocks", help="block decomposition")
    p.add_argument("--host", required=True)
    p.add_argument("--dot", help="write the block-cut tree as DOT")
    p.set_defaults(func=cmd_blocks)

    p = sub.add_parser("minor", parents=[budget], help="minor search or enumeration")
    p.add_argument("--pattern", required=True)
    p.add_argument("--host", required=True)
    p.add_argument("--enumerate", type=_positive, metavar="N", help="list up to N minimal models")
    p.set_defaults(func=cmd_minor)

    p = sub.add_parser("paths", help="vertex-disjoint paths and a minimum cut")
    p.add_argument("--host", required=True)
    p.add_argument("--sources", required=True, help='ids "0,3" or predicates "row==0&col<0"')
    p.add_argument("--sinks", required=True)
    p.set_defaults(func=cmd_paths)

    p = sub.add_parser("pack", parents=[budget], help="disjoint minor models")
    p.add_argument("--pattern", required=True)
    p.add_argument("--host", required=True)
    p.add_argument("--target", type=_positive, required=True)
    p.add_argument("--exact", action="store_true")
    p.set_defaults(func=cmd_pack)

    p = sub.add_parser("verify", help="finite checks on build_G")
    checks = p.add_subparsers(dest="check", required=True)
    c = checks.add_parser("lemma1", parents=[budget])
    c.add_argument("--m", type=_positive, required=True)
    c.add_argument("--h", type=_natural, required=True)
    c.add_argument("--negative-control", action="store_true", help="run on a host with an extra K5 at (0,0)")
    c.add_argument("--json", action="store_true")
    c = checks.add_parser("proposition", parents=[budget])
    c.add_argument("--n", type=_positive, required=True)
    c.add_argument("--ray", type=_positive, required=True, help="edges of the ray path")
    c.add_argument("--json", action="store_true")
    c = checks.add_parser("saturation", parents=[budget])
    c.add_argument("--h", type=_natural, required=True)
    c.add_argument("--m-max", type=_positive, required=True)
    c.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("recipe", help="construction recipes")
    actions = p.add_subparsers(dest="action", required=True)
    c = actions.add_parser("parse")
    c.add_argument("file", help="recipe file, or - for stdin")
    c = actions.add_parser("eval")
    c.add_argument("file", help="recipe file, or - for stdin")
    c.add_argument("--m", type=_positive, required=True)
    c.add_argument("--h", type=_natural, required=True)
    c.add_argument("--out")
    p.set_defaults(func=cmd_recipe)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"minorlab: error: {exc}\n")
        return EXIT_USAGE
    except (GraphError, OSError) as exc:
        sys.stderr.write(f"minorlab: error: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
