"""Command-line front end.

Exit codes: 0 ok, 1 parse or argument error, 2 search budget exhausted,
3 product bound hypotheses unmet, 4 construction failed validation,
5 certificate rejected by ``verify``, 6 sweep failures.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import (
    ArgumentError,
    BoundError,
    BudgetExhausted,
    ConstructionError,
    GraphError,
    LookupFailure,
    ParseError,
)
from .families import generate, kappa3_hypercube, parse_family, upper_bounds
from .graph import Graph, cartesian_product, local_connectivity, menger_paths, parse_graph, to_dot, vertex_connectivity
from .product import construct_path_product, construct_tree_product, construct_two_factor
from .steiner import DEFAULT_BUDGET, Certificate, kappa3, kappa_S, validate_certificate
from .sweep import report_markdown, run_sweep

EXIT_OK, EXIT_PARSE, EXIT_BUDGET, EXIT_BOUND, EXIT_INVALID, EXIT_REJECTED, EXIT_SWEEP = range(7)


def load_graph(arg: str, product_labels: bool = False) -> Graph:
    """Family string first, then a file path; "-" reads stdin."""
    if arg == "-":
        return parse_graph(sys.stdin.read(), name="stdin", allow_product_labels=product_labels)
    try:
        return generate(parse_family(arg))
    except ArgumentError:
        if not os.path.exists(arg):
            raise
    with open(arg) as fh:
        name = os.path.splitext(os.path.basename(arg))[0]
        return parse_graph(fh.read(), name=name, allow_product_labels=product_labels)


def _triple(text: str | None) -> list[str] | None:
    if text is None:
        return None
    items = [t.strip() for t in text.split(",") if t.strip()]
    if len(items) != 3:
        raise ArgumentError(f"--set needs three comma-separated labels, got {text!r}")
    return items


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2))


def _write(path: str, text: str) -> None:
    with open(path, "w") as fh:
        fh.write(text)


def _host(args) -> Graph:
    g = load_graph(args.graph)
    if getattr(args, "times", None):
        g = cartesian_product(g, load_graph(args.times))
    return g


def cmd_kappa(args) -> int:
    g = _host(args)
    pair = args.pair.split(",") if args.pair else None
    if pair:
        if len(pair) != 2:
            raise ArgumentError("--pair needs two comma-separated labels")
        x, y = pair
        k = local_connectivity(g, x, y)
        _emit({"kappa": k, "pair": [x, y], "paths": menger_paths(g, x, y, k)})
    else:
        _emit({"kappa": vertex_connectivity(g)})
    return EXIT_OK


def cmd_kappa3(args) -> int:
    g = _host(args)
    s = _triple(args.set)
    if s is not None:
        try:
            r = kappa_S(g, s, budget=args.budget)
        except BudgetExhausted as exc:
            _emit({"lower": exc.lower, "upper": exc.upper})
            return EXIT_BUDGET
        out = {"kappa_S": r.value, "terminals": sorted(s), "exact": r.exact}
        cert = r.certificate
    else:
        r = kappa3(g, budget=args.budget)
        out = {"kappa3": r.value, "witness_triple": list(r.triple) if r.triple else None,
               "exact": r.exact}
        cert = r.certificate
        if not r.exact:
            _emit({"lower": r.lower, "upper": r.upper})
            return EXIT_BUDGET
    _emit(out)
    if args.certificate and cert is not None:
        _write(args.certificate, cert.to_json() + "\n")
    if args.dot:
        trees = [t.edges for t in cert.trees] if cert else []
        _write(args.dot, to_dot(g, trees, cert.terminals if cert else ()))
    return EXIT_OK


def cmd_product(args) -> int:
    g, h = load_graph(args.g), load_graph(args.h)
    p = cartesian_product(g, h)
    text = p.to_edgelist()
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _build(g: Graph, h: Graph, s, mode):
    if h.is_tree():
        if max(h.degree(v) for v in h) <= 2:
            return construct_path_product(g, h, s, mode)
        return construct_tree_product(g, h, s, mode)
    return construct_two_factor(g, h, s, mode)


def cmd_construct(args) -> int:
    g, h = load_graph(args.g), load_graph(args.h)
    s = _triple(args.set)
    try:
        cert, trace = _build(g, h, s, args.mode)
    except ConstructionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.trace is not None:
            print(json.dumps(exc.trace.to_dict(), indent=2), file=sys.stderr)
        return EXIT_INVALID
    product = cartesian_product(g, h)
    _emit({"count": len(cert), "bound": trace.bound, "case": trace.tag.value,
           "subcase": trace.subcase, "meets_bound": len(cert) >= trace.bound["required"]})
    if args.out:
        _write(args.out, cert.to_json() + "\n")
    if args.trace:
        _write(args.trace, json.dumps(trace.to_dict(), indent=2) + "\n")
    if args.dot:
        _write(args.dot, to_dot(product, [t.edges for t in cert.trees], cert.terminals))
    return EXIT_OK


def cmd_verify(args) -> int:
    g = _host(args)
    with open(args.certificate) if args.certificate != "-" else sys.stdin as fh:
        cert = Certificate.from_json(fh.read())
    report = validate_certificate(g, cert)
    if report:
        for v in report:
            print(v)
        return EXIT_REJECTED
    print(f"OK k={len(cert)}")
    return EXIT_OK


def cmd_family(args) -> int:
    spec = parse_family(args.spec)
    g = generate(spec)
    if args.info:
        delta_bound, kap = upper_bounds(g) if g.n >= 3 and g.is_connected() else (None, vertex_connectivity(g))
        info = {"family": str(spec), "n": g.n, "m": g.m, "kappa": kap, "delta_minus_one": delta_bound}
        if spec.kind == "hypercube" and spec.params[0] >= 2:
            info["kappa3_formula"] = kappa3_hypercube(spec.params[0])
        _emit(info)
    else:
        sys.stdout.write(g.to_edgelist())
    return EXIT_OK


def cmd_sweep(args) -> int:
    results = run_sweep(max_n=args.max_n, seed=args.seed, corrupt=args.corrupt_oracle)
    text = report_markdown(results)
    if args.report:
        _write(args.report, text)
    for r in results:
        print(f"{'PASS' if r.ok else 'FAIL'} {r.name} ({r.seconds:.1f}s)")
    failed = [r for r in results if not r.ok]
    for r in failed:
        for f in r.failures:
            print(f"  {r.name}: {f}", file=sys.stderr)
    return EXIT_SWEEP if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="steinerprod",
                                 description="Generalized 3-connectivity of graphs and their products.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kappa", help="vertex connectivity")
    p.add_argument("graph")
    p.add_argument("--times", help="second factor; work in the product")
    p.add_argument("--pair", help="x,y: local connectivity and Menger paths")
    p.set_defaults(func=cmd_kappa)

    p = sub.add_parser("kappa3", help="generalized 3-connectivity, or kappa(S) with --set")
    p.add_argument("graph")
    p.add_argument("--times", help="second factor; work in the product")
    p.add_argument("--set", help="x,y,z terminal triple")
    p.add_argument("--certificate", help="write the witnessing certificate here")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="search node cap")
    p.add_argument("--dot", help="write a DOT drawing of the certificate")
    p.set_defaults(func=cmd_kappa3)

    p = sub.add_parser("product", help="Cartesian product as an edge list")
    p.add_argument("g")
    p.add_argument("h")
    p.add_argument("--out")
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("construct", help="build S-trees in a product from factor packings")
    p.add_argument("g")
    p.add_argument("h")
    p.add_argument("--set", required=True, help='three product labels, e.g. "u1|v1,u2|v2,u3|v3"')
    p.add_argument("--mode", choices=["i", "ii"], help="force a bound variant")
    p.add_argument("--out", help="certificate JSON path")
    p.add_argument("--trace", help="trace JSON path")
    p.add_argument("--dot", help="DOT drawing path")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check a certificate against a graph")
    p.add_argument("graph")
    p.add_argument("certificate")
    p.add_argument("--times", help="second factor; the host is the product")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("family", help="generate a named graph")
    p.add_argument("spec")
    p.add_argument("--info", action="store_true", help="print sizes and bounds instead")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("sweep", help="run the invariant battery")
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report", help="markdown report path")
    p.add_argument("--corrupt-oracle", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_sweep)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExhausted as exc:
        _emit({"lower": exc.lower, "upper": exc.upper})
        return EXIT_BUDGET
    except BoundError as exc:
        print(f"error: {exc} (hypothesis: {exc.hypothesis})", file=sys.stderr)
        return EXIT_BOUND
    except (ParseError, ArgumentError, LookupFailure, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except GraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
