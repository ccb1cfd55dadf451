"""Command-line front end: construction, bounding, and verification as
reproducible batch runs emitting self-describing JSON reports.

Exit codes: 0 success, 1 runtime/budget failure (an exact result was
required but the budget ran out), 2 usage or validation errors.

The default output directory comes from --out or the ZECAP_OUT environment
variable.  All randomness flows from --seed, and --workers only affects
timing, never report content.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import graphs, independence, polyrep, privileged, ramsey
from .combin import binomial
from .reporting import canonical_json, report_envelope

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


class RuntimeFailure(Exception):
    pass


def _parse_family(spec: str) -> list[list[int]]:
    """Inline JSON (e.g. "[[1,2],[1,3]]") or @file containing the same."""
    text = spec
    if spec.startswith("@"):
        with open(spec[1:]) as f:
            text = f.read()
    fam = json.loads(text)
    if not isinstance(fam, list) or not all(isinstance(m, list) for m in fam):
        raise UsageError("family must be a JSON list of lists of sender ids")
    return fam


def _parse_ints(csv: str) -> list[int]:
    return [int(x) for x in csv.split(",") if x.strip()]


def _out_path(args, name: str) -> str:
    out = args.out or os.environ.get("ZECAP_OUT") or "."
    if out != "." and not os.path.isdir(out):
        os.makedirs(out, exist_ok=True)
    return os.path.join(out, name)


def _emit(report: dict, path: str | None, started: float) -> None:
    report["timing"]["seconds"] = round(time.time() - started, 3)
    text = canonical_json(report)
    if path:
        with open(path, "w") as f:
            f.write(text)
    sys.stdout.write(text)


def cmd_construct_privileged(args) -> int:
    started = time.time()
    family = privileged.SubsetFamily.from_lists(args.t, _parse_family(args.family))
    if args.primes:
        pool = _parse_ints(args.primes)
        system = privileged.build_system(family, args.r, args.s,
                                         prime_pool=pool,
                                         cap_bits=args.cap_bits,
                                         workers=args.workers)
    else:
        system = privileged.build_system(family, args.r, args.s,
                                         base_prime=args.base_prime,
                                         cap_bits=args.cap_bits,
                                         workers=args.workers)
    out_dir = args.out or os.environ.get("ZECAP_OUT") or "."
    manifest_path = privileged.save_system(system, out_dir)
    report = report_envelope("construct privileged", {
        "t": args.t, "family": [list(m) for m in family.members()],
        "r": args.r, "s": args.s, "prime_pool": list(system.prime_pool),
        "out": out_dir,
    }, seed=args.seed)
    report["manifest"] = manifest_path
    report["n"] = system.n
    report["warnings"] = list(system.params.warnings)
    report["timing"]["workers"] = args.workers
    _emit(report, None, started)
    return EXIT_OK


def cmd_bound(args) -> int:
    started = time.time()
    system = privileged.load_system(args.system)
    coalition = _parse_ints(args.coalition)
    if not coalition:
        raise UsageError("coalition must be nonempty")
    rep = privileged.bound_report(system, coalition, verify=not args.no_verify,
                                  cap_bits=args.cap_bits, workers=args.workers)
    report = report_envelope("bound", {
        "system": args.system, "coalition": coalition,
        "verify": not args.no_verify,
    }, seed=args.seed)
    report["bound"] = rep.to_dict()
    if rep.certificate is not None and args.cert_out:
        polyrep.save_certificate(rep.certificate, args.cert_out)
        report["certificate_file"] = args.cert_out
    report["timing"]["workers"] = args.workers
    _emit(report, args.json, started)
    return EXIT_OK


def cmd_alpha(args) -> int:
    started = time.time()
    g = graphs.load_graph(args.graph)
    res = independence.max_independent_set(g, node_budget=args.budget)
    report = report_envelope("alpha", {
        "graph": args.graph, "budget": args.budget,
        "require_exact": args.require_exact,
    }, seed=args.seed)
    report["alpha"] = res.to_dict()
    report["timing"]["workers"] = args.workers
    _emit(report, args.json, started)
    if args.require_exact and not res.exact:
        raise RuntimeFailure(
            f"budget {args.budget} exhausted before an exact result")
    return EXIT_OK


def cmd_graph(args) -> int:
    started = time.time()
    if args.graph_cmd == "product":
        parts = [graphs.load_graph(p) for p in args.inputs]
        if len(parts) != 2:
            raise UsageError("product takes exactly two graph files")
        out = graphs.strong_product(parts[0], parts[1],
                                    cap_bits=args.cap_bits,
                                    workers=args.workers)
    elif args.graph_cmd == "power":
        if len(args.inputs) != 1:
            raise UsageError("power takes exactly one graph file")
        out = graphs.power(graphs.load_graph(args.inputs[0]), args.k,
                           cap_bits=args.cap_bits, workers=args.workers)
    elif args.graph_cmd == "union":
        parts = [graphs.load_graph(p) for p in args.inputs]
        out = graphs.disjoint_union(parts, cap_bits=args.cap_bits,
                                    workers=args.workers)
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown graph command {args.graph_cmd}")
    graphs.save_graph(out, args.output)
    report = report_envelope(f"graph {args.graph_cmd}", {
        "inputs": list(args.inputs), "k": getattr(args, "k", None),
        "output": args.output,
    }, seed=args.seed)
    report["n"] = out.n
    report["edges"] = out.edge_count()
    report["timing"]["workers"] = args.workers
    _emit(report, None, started)
    return EXIT_OK


def cmd_ramsey_build(args) -> int:
    started = time.time()
    coloring = ramsey.build_coloring(args.r, args.s, _parse_ints(args.primes),
                                     cap_bits=args.cap_bits,
                                     workers=args.workers)
    ramsey.save_coloring(coloring, args.output)
    report = report_envelope("ramsey build", {
        "r": args.r, "s": args.s, "primes": _parse_ints(args.primes),
        "output": args.output,
    }, seed=args.seed)
    report["n"] = coloring.n
    report["t"] = coloring.t
    report["well_defined"] = ramsey.check_well_defined(coloring).to_dict()
    report["per_color"] = ramsey.per_color_bounds(coloring)
    report["timing"]["workers"] = args.workers
    _emit(report, None, started)
    return EXIT_OK


def cmd_ramsey_verify(args) -> int:
    started = time.time()
    coloring = ramsey.load_coloring(args.coloring)
    if args.mode == "sampled":
        result = ramsey.verify_rainbow(coloring, "sampled", size=args.size,
                                       trials=args.trials, seed=args.seed or 0,
                                       workers=args.workers)
    else:
        result = ramsey.verify_rainbow(coloring, "exact",
                                       alpha_budget=args.budget,
                                       workers=args.workers)
    report = report_envelope("ramsey verify", {
        "coloring": args.coloring, "mode": args.mode, "size": args.size,
        "trials": args.trials, "budget": args.budget,
    }, seed=args.seed)
    report["well_defined"] = ramsey.check_well_defined(coloring).to_dict()
    report["result"] = result
    report["timing"]["workers"] = args.workers
    _emit(report, args.json, started)
    if not result["pass"]:
        raise RuntimeFailure("rainbow verification failed")
    return EXIT_OK


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--workers", type=int, default=1,
                   help="worker threads for pair scans (never affects output)")
    p.add_argument("--seed", type=int, default=None,
                   help="seed recorded in the report and used for sampling")
    p.add_argument("--cap-bits", type=int, default=None,
                   help="override the adjacency size cap (n^2 bits)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="zecap",
        description="zero-error capacity constructions and verification")
    sub = ap.add_subparsers(dest="command", required=True)

    con = sub.add_parser("construct", help="build channel-graph systems")
    con_sub = con.add_subparsers(dest="construct_cmd", required=True)
    cp = con_sub.add_parser("privileged",
                            help="build the t channel graphs for a family")
    cp.add_argument("--t", type=int, required=True)
    cp.add_argument("--family", required=True,
                    help='JSON list of sender subsets, e.g. "[[1,2],[3]]", '
                         "or @file")
    cp.add_argument("--r", type=int, required=True)
    cp.add_argument("--s", type=int, required=True)
    group = cp.add_mutually_exclusive_group(required=True)
    group.add_argument("--primes", help="comma-separated explicit prime pool")
    group.add_argument("--base-prime", type=int,
                       help="use the first primes above this value")
    cp.add_argument("--out", help="output directory (default $ZECAP_OUT or .)")
    _add_common(cp)
    cp.set_defaults(func=cmd_construct_privileged)

    bd = sub.add_parser("bound", help="capacity bounds for a coalition")
    bd.add_argument("--system", required=True, help="system directory")
    bd.add_argument("--coalition", required=True,
                    help="comma-separated sender ids, e.g. 1,2")
    bd.add_argument("--no-verify", action="store_true",
                    help="skip certificate verification on the union graph")
    bd.add_argument("--cert-out", help="write the certificate JSON here")
    bd.add_argument("--json", help="write the report JSON here")
    _add_common(bd)
    bd.set_defaults(func=cmd_bound)

    al = sub.add_parser("alpha", help="maximum independent set of a graph")
    al.add_argument("graph", help="DIMACS graph file")
    al.add_argument("--budget", type=int,
                    default=independence.DEFAULT_NODE_BUDGET,
                    help="search-node budget")
    al.add_argument("--require-exact", action="store_true",
                    help="exit 1 if the budget is exhausted")
    al.add_argument("--json", help="write the report JSON here")
    _add_common(al)
    al.set_defaults(func=cmd_alpha)

    gr = sub.add_parser("graph", help="graph file operations")
    gr.add_argument("graph_cmd", choices=["product", "power", "union"])
    gr.add_argument("inputs", nargs="+", help="input DIMACS files")
    gr.add_argument("-o", "--output", required=True)
    gr.add_argument("--k", type=int, default=2, help="power exponent")
    _add_common(gr)
    gr.set_defaults(func=cmd_graph)

    rm = sub.add_parser("ramsey", help="rainbow edge colorings")
    rm_sub = rm.add_subparsers(dest="ramsey_cmd", required=True)
    rb = rm_sub.add_parser("build", help="build and store a coloring")
    rb.add_argument("--r", type=int, required=True)
    rb.add_argument("--s", type=int, required=True)
    rb.add_argument("--primes", required=True)
    rb.add_argument("-o", "--output", required=True)
    _add_common(rb)
    rb.set_defaults(func=cmd_ramsey_build)
    rv = rm_sub.add_parser("verify", help="verify a stored coloring")
    rv.add_argument("--coloring", required=True)
    rv.add_argument("--mode", choices=["exact", "sampled"], required=True)
    rv.add_argument("--size", type=int, default=0,
                    help="induced subgraph size (sampled mode)")
    rv.add_argument("--trials", type=int, default=0,
                    help="number of samples (sampled mode)")
    rv.add_argument("--budget", type=int,
                    default=independence.DEFAULT_NODE_BUDGET,
                    help="alpha search budget (exact mode)")
    rv.add_argument("--json", help="write the report JSON here")
    _add_common(rv)
    rv.set_defaults(func=cmd_ramsey_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except RuntimeFailure as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_RUNTIME
    except (UsageError, ValueError, FileNotFoundError, json.JSONDecodeError,
            graphs.SizeCapExceeded) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
