"""Command line interface.

Exit codes: 0 success, 1 a validation check found a violation, 2 usage
error (argparse's own convention).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import bounds
from .egraph import (
    CodecError,
    EdgeOrdering,
    OrderingError,
    GeometricGraph,
    build_complete_graph,
    decode,
    decode_witness,
    encode,
    encode_witness,
    validate_witness,
)
from .extremal import extract_monotone_tree_general, extract_xmonotone_path, largest_convex_subset
from .geom import GeometryError, smaller_side
from .harness import (
    SHAPES,
    SUITES,
    ExperimentConfig,
    builtin_suite,
    gen_points,
    run_experiment_suite,
)
from .orderings import KINDS, OrderingSpec, block_groups, block_ordering, make_ordering, side_count_ordering
from .search import (
    MINIMAX_STATISTICS,
    SearchBudget,
    block_structure_violations,
    largest_monotone_noncrossing_complete_tree,
    longest_monotone_noncrossing_path,
    max_alternating_slope_chain,
    minimax_over_orderings,
)

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _spec_from_args(args) -> OrderingSpec:
    return OrderingSpec(args.ordering, groups=getattr(args, "groups", None), seed=args.seed)


def _load_or_generate(args, need_ordering: bool) -> tuple[GeometricGraph, EdgeOrdering | None, dict]:
    if args.input:
        doc = decode(Path(args.input).read_text())
        graph, ordering, meta = doc.graph, doc.ordering, dict(doc.meta or {})
        if ordering is None and need_ordering:
            ordering = make_ordering(graph, _spec_from_args(args))
            meta["ordering"] = _spec_from_args(args).to_dict()
        return graph, ordering, meta
    graph = build_complete_graph(gen_points(args.shape, args.n, args.seed))
    meta = {"shape": args.shape, "seed": args.seed}
    ordering = None
    if need_ordering:
        spec = _spec_from_args(args)
        ordering = make_ordering(graph, spec)
        meta["ordering"] = spec.to_dict()
    return graph, ordering, meta


def _budget(args) -> SearchBudget:
    return SearchBudget(args.budget_nodes, args.budget_secs)


def cmd_gen_points(args) -> int:
    graph = build_complete_graph(gen_points(args.shape, args.n, args.seed))
    _emit(encode(graph, None, {"generator": args.shape, "n": args.n, "seed": args.seed}), args.out)
    return EXIT_OK


def cmd_order(args) -> int:
    graph, _, meta = _load_or_generate(args, False)
    spec = _spec_from_args(args)
    meta["ordering"] = spec.to_dict()
    _emit(encode(graph, make_ordering(graph, spec), meta), args.out)
    return EXIT_OK


def cmd_search(args) -> int:
    graph, ordering, meta = _load_or_generate(args, True)
    if args.what == "path":
        res = longest_monotone_noncrossing_path(graph, ordering, _budget(args))
        summary = {"length": res.length, "exact": res.exact, "nodes": res.nodes}
    else:
        res = largest_monotone_noncrossing_complete_tree(graph, ordering, args.direction, _budget(args))
        summary = {"height": res.height, "size": res.size, "exact": res.exact, "nodes": res.nodes}
    print(json.dumps(summary, sort_keys=True), file=sys.stderr)
    _emit(encode_witness(res.witness, graph, ordering, meta), args.out)
    return EXIT_OK


def cmd_extract(args) -> int:
    if args.what == "es":
        graph, _, meta = _load_or_generate(args, False)
        subset = largest_convex_subset(graph.points)
        _emit(json.dumps({"convex_subset": list(subset), "size": len(subset)}) + "\n", args.out)
        return EXIT_OK
    graph, ordering, meta = _load_or_generate(args, True)
    if args.what == "ramsey":
        w = extract_xmonotone_path(graph, ordering)
    else:
        w = extract_monotone_tree_general(graph, ordering)
    _emit(encode_witness(w, graph, ordering, meta), args.out)
    return EXIT_OK


def _report(name: str, failures: list[str]) -> int:
    for f in failures:
        print(f"FAIL {name}: {f}")
    print(f"{name}: {'ok' if not failures else f'{len(failures)} violation(s)'}")
    return EXIT_OK if not failures else EXIT_VIOLATION


def verify_lemma1(points) -> list[str]:
    order = sorted(range(len(points)), key=lambda v: points[v])
    failures = []
    for cut in range(2, len(points) - 1):
        U = [points[v] for v in order[:cut]]
        V = [points[v] for v in order[cut:]]
        chain = max_alternating_slope_chain(U, V)
        if len(chain) - 1 != 2:
            failures.append(f"split {cut}|{len(points) - cut}: chain length {len(chain) - 1}")
    return failures


def verify_duality(graph, ordering) -> list[str]:
    rev = ordering.reversed()
    failures = []
    a = longest_monotone_noncrossing_path(graph, ordering).length
    b = longest_monotone_noncrossing_path(graph, rev).length
    if a != b:
        failures.append(f"path {a} != reversed {b}")
    ta = largest_monotone_noncrossing_complete_tree(graph, ordering, "ascending").size
    td = largest_monotone_noncrossing_complete_tree(graph, rev, "descending").size
    if ta != td:
        failures.append(f"ascending tree {ta} != descending tree under reversal {td}")
    return failures


def verify_thm6(graph) -> list[str]:
    ordering = side_count_ordering(graph)
    failures = []
    for e, (i, j) in enumerate(graph.edges):
        inside = sorted(smaller_side(graph.points, (i, j)))
        for a in range(len(inside)):
            for b in range(a + 1, len(inside)):
                f = graph.edge_index(inside[a], inside[b])
                if not ordering.ranks[f] < ordering.ranks[e]:
                    failures.append(f"edge {graph.edges[f]} inside S of {(i, j)} is not smaller")
    res = largest_monotone_noncrossing_complete_tree(graph, ordering, "ascending")
    if res.height > bounds.tree_height_upper(graph.n):
        failures.append(f"ascending height {res.height} > {bounds.tree_height_upper(graph.n)}")
    return failures


def verify_thm7(graph) -> list[str]:
    ordering = block_ordering(graph)
    failures = []
    desc = largest_monotone_noncrossing_complete_tree(graph, ordering, "descending")
    failures += block_structure_violations(graph, ordering, block_groups(graph), desc.witness)
    either = largest_monotone_noncrossing_complete_tree(graph, ordering, "either")
    if either.size > bounds.block_upper(graph.n):
        failures.append(f"tree size {either.size} > {bounds.block_upper(graph.n):.2f}")
    return failures


def cmd_verify(args) -> int:
    if args.what == "witness":
        if not args.input:
            print("verify witness needs --in", file=sys.stderr)
            return EXIT_USAGE
        witness, doc = decode_witness(Path(args.input).read_text())
        if doc is None or doc.ordering is None:
            print("witness file does not embed points and ranks", file=sys.stderr)
            return EXIT_USAGE
        bad = validate_witness(doc.graph, doc.ordering, witness)
        return _report("witness", [str(bad)] if bad else [])
    graph, ordering, _ = _load_or_generate(args, args.what == "duality")
    if args.what == "lemma1":
        return _report("lemma1", verify_lemma1(graph.points))
    if args.what == "duality":
        return _report("duality", verify_duality(graph, ordering))
    if args.what == "thm6":
        return _report("thm6", verify_thm6(graph))
    return _report("thm7", verify_thm7(graph))


def cmd_minimax(args) -> int:
    graph, _, _ = _load_or_generate(args, False)
    res = minimax_over_orderings(graph, args.statistic)
    print(json.dumps({"statistic": args.statistic, "value": res.value, "ranks": list(res.ordering.ranks),
                      "orderings": res.orderings_checked}, sort_keys=True))
    return EXIT_OK


def cmd_suite(args) -> int:
    if args.config:
        config = ExperimentConfig.from_dict(json.loads(Path(args.config).read_text()))
    elif args.name:
        config = builtin_suite(args.name)
    else:
        print("suite needs a name or --config", file=sys.stderr)
        return EXIT_USAGE
    if args.budget_nodes is not None or args.budget_secs is not None:
        config.budget = _budget(args)
    report = run_experiment_suite(config, args.out)
    if not args.out:
        sys.stdout.write(report.to_csv())
    return EXIT_VIOLATION if any(r.error for r in report.rows) else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=8)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--shape", choices=SHAPES, default="parabola")
    common.add_argument("--ordering", choices=KINDS, default="slope_divide")
    common.add_argument("--groups", type=int, default=None, help="group count for block orderings")
    common.add_argument("--direction", choices=("ascending", "descending", "either"), default="either")
    common.add_argument("--budget-nodes", type=int, default=None)
    common.add_argument("--budget-secs", type=float, default=None)
    common.add_argument("--in", dest="input", default=None)
    common.add_argument("--out", default=None)
    common.add_argument("--config", default=None)
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="edgeorder", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("gen-points", parents=[common]).set_defaults(func=cmd_gen_points)
    sub.add_parser("order", parents=[common]).set_defaults(func=cmd_order)
    s = sub.add_parser("search", parents=[common])
    s.add_argument("what", choices=("path", "tree"))
    s.set_defaults(func=cmd_search)
    s = sub.add_parser("extract", parents=[common])
    s.add_argument("what", choices=("ramsey", "es", "tree"))
    s.set_defaults(func=cmd_extract)
    s = sub.add_parser("verify", parents=[common])
    s.add_argument("what", choices=("lemma1", "duality", "thm6", "thm7", "witness"))
    s.set_defaults(func=cmd_verify)
    s = sub.add_parser("minimax", parents=[common])
    s.add_argument("--statistic", choices=MINIMAX_STATISTICS, default="path")
    s.set_defaults(func=cmd_minimax)
    s = sub.add_parser("suite", parents=[common])
    s.add_argument("name", nargs="?", choices=sorted(SUITES))
    s.set_defaults(func=cmd_suite)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (CodecError, GeometryError, OrderingError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
