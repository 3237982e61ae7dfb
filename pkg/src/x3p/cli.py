"""Command-line interface.

Exit codes: 0 success / verified, 1 verification false, 2 usage error,
3 search budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import bounds, constructions, designs, graph_core, report
from .errors import GraphFormatError, PartitionError, SearchBudgetExceeded, X3PError
from .sidon import SidonSet, bose_chowla

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _emit(args, record, text):
    if args.json:
        print(json.dumps(record))
    else:
        print(text)


# -- construct ------------------------------------------------------------------

def _build(args):
    kind = args.kind
    if kind == "g_qt":
        return constructions.build_G_qt(args.q, args.t)
    if kind == "gamma_qt":
        return constructions.build_Gamma_qt(args.q, args.t)
    if kind == "williford":
        return constructions.build_williford(args.v, args.A, args.c)
    if kind == "sum_quotient":
        if args.q is not None:
            A, H = constructions.bose_chowla_quotient(args.q, args.t or 1)
            return constructions.build_sum_quotient(H.m, H, A)
        if args.m is None or args.A is None:
            raise argparse.ArgumentTypeError("sum_quotient needs --q [--t] or --m --h --A")
        H = constructions.subgroup_generated(args.m, (args.h or 0) % args.m)
        return constructions.build_sum_quotient(args.m, H, SidonSet(args.m, tuple(args.A)))
    raise argparse.ArgumentTypeError(f"unknown construction {kind!r}")


def cmd_construct(args):
    G = _build(args)
    if args.out:
        graph_core.write_graph(G, args.out)
    st = graph_core.stats(G)
    parts = ",".join(map(str, G.part_sizes)) if len(G.part_sizes) <= 8 else f"{len(G.part_sizes)} parts"
    text = (f"{G.metadata['construction']}: n={G.n} edges={st.edge_count} parts={parts} "
            f"degree={st.degree_min}..{st.degree_max}")
    _emit(args, report.graph_report(G).to_dict(), text)
    return EXIT_OK


# -- verify ---------------------------------------------------------------------

def cmd_verify(args):
    try:
        G = graph_core.read_graph(args.path)
    except (GraphFormatError, PartitionError) as exc:
        print(f"partition validity error: {exc}", file=sys.stderr)
        return EXIT_FALSE
    rec = report.freeness_record(G, args.s, args.t)
    text = f"K_{{{rec['s']},{rec['t']}}}-free: {'true' if rec['verified'] else 'false'}"
    if rec["witness"]:
        w = rec["witness"]
        text += f"\nwitness: side={w['side']} common={w['common']} (max common neighbours {rec['max_common']})"
    _emit(args, {"path": args.path, "n": G.n, "part_sizes": list(G.part_sizes), "freeness": rec}, text)
    return EXIT_OK if rec["verified"] else EXIT_FALSE


# -- bound ----------------------------------------------------------------------

def cmd_bound(args):
    mode = args.mode
    if mode == "asymptotic":
        b = bounds.thm1_coefficient(args.s, args.t)
        _emit(args, {"coefficient": b.coefficient, "exponent": b.exponent, "source": b.source}, b.describe())
    elif mode == "lagrange-oracle":
        value, delta = bounds.lagrange_numeric_oracle(args.s, args.t, args.grid, args.restarts, args.seed)
        closed = bounds.thm1_coefficient(args.s, args.t).coefficient
        rec = {"value": value, "argmax": delta, "closed_form": closed, "gap": abs(value - closed)}
        _emit(args, rec, f"oracle {value:.6f} at delta=({delta[0]:.4f},{delta[1]:.4f},{delta[2]:.4f}); "
                         f"closed form {closed:.6f}")
    elif mode in ("exact-chi3", "exact-chi2"):
        if args.n is None:
            raise argparse.ArgumentTypeError(f"{mode} needs --n")
        if mode == "exact-chi3":
            res = bounds.exact_chi3_bound(args.n, args.s, args.t, threads=args.threads)
        else:
            res = bounds.exact_chi2_bound(args.n, args.s, args.t)
        _emit(args, res.to_dict(), res.describe())
    elif mode == "exact-parts":
        if not args.parts or len(args.parts) != 3:
            raise argparse.ArgumentTypeError("exact-parts needs --parts n1,n2,n3")
        res = bounds.exact_tripartite_bound(*args.parts, args.s, args.t)
        _emit(args, res.to_dict(), res.describe())
    return EXIT_OK


# -- certify --------------------------------------------------------------------

def cmd_certify(args):
    if args.kind == "williford":
        params = {"v": args.v, "A": args.A, "c": args.c}
    else:
        params = {"q": args.q, "t": args.divisor}
    rep = report.certify_equality(args.n, args.s, args.t, args.kind, params, threads=args.threads)
    if args.json:
        print(rep.to_json())
    else:
        upper = rep.bound_upper
        print(f"witness {args.kind}: n={rep.n} edges={rep.edge_count} "
              f"K_{{{args.s},{args.t}}}-free={rep.freeness.get('verified')}")
        if upper:
            print(f"exact chi<=3 bound: {upper['value']} at ({','.join(map(str, upper['partition']))})")
        print(f"certified={'true' if rep.equality_certified else 'false'}"
              + (f" ({rep.reason})" if rep.reason else ""))
    return EXIT_OK if rep.equality_certified else EXIT_FALSE


# -- search ---------------------------------------------------------------------

def _coverage(text):
    if text == "full":
        return True, None
    if text == "any":
        return False, None
    if text.startswith("ratio>="):
        try:
            return False, Fraction(text[len("ratio>="):])
        except ValueError:
            pass
    raise argparse.ArgumentTypeError(f"--coverage must be 'full', 'any' or 'ratio>=x', got {text!r}")


def cmd_search(args):
    full, ratio = args.coverage
    res = designs.search_translate_pairs(args.v, args.k, full, budget=args.budget, min_ratio=ratio,
                                         threads=args.threads)
    if args.json:
        for p in res.pairs:
            print(json.dumps({"v": p.v, "c": p.c, "A": list(p.A)}))
        print(json.dumps({"status": res.status, "nodes": res.nodes, "pairs": len(res.pairs)}))
    else:
        for line in res.lines():
            print(line)
        print(f"# {len(res.pairs)} pairs, status {res.status}")
    return EXIT_OK if res.complete else EXIT_BUDGET


# -- parser ---------------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(prog="x3p", description=__doc__.splitlines()[0])
    parser.add_argument("--threads", type=int, default=None,
                        help="worker processes (default: $X3P_THREADS or 1)")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--json", action="store_true", help="emit JSON instead of text")

    p = sub.add_parser("construct", help="build a graph and write it as x3p-graph v1")
    p.add_argument("kind", choices=["g_qt", "gamma_qt", "sum_quotient", "williford"])
    p.add_argument("--q", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--v", type=int)
    p.add_argument("--A", type=_int_list)
    p.add_argument("--c", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--h", type=int, help="generator of H (sum_quotient)")
    p.add_argument("--out", "-o")
    common(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check partition validity and K_{s,t}-freeness of a graph file")
    p.add_argument("path")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bound", help="evaluate asymptotic or exact bounds")
    p.add_argument("mode", choices=["asymptotic", "lagrange-oracle", "exact-chi3", "exact-chi2", "exact-parts"])
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--parts", type=_int_list)
    p.add_argument("--grid", type=int, default=300)
    p.add_argument("--restarts", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("certify", help="certify ex_{chi<=3}(n, K_{s,t}) = edges of a witness")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, default=2)
    p.add_argument("--t", type=int, default=2)
    p.add_argument("--kind", choices=["williford", "gamma_qt"], default="williford")
    p.add_argument("--v", type=int)
    p.add_argument("--A", type=_int_list)
    p.add_argument("--c", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--divisor", type=int, help="subgroup order t for gamma_qt witnesses")
    common(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("search", help="enumerate translate-pair difference families")
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--coverage", type=_coverage, default=(True, None),
                   help="'full' (default), 'any', or 'ratio>=x'")
    p.add_argument("--budget", type=int, default=None, help="DFS node cap per multiplier orbit")
    common(p)
    p.set_defaults(func=cmd_search)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.threads is None and os.environ.get("X3P_THREADS"):
        args.threads = int(os.environ["X3P_THREADS"])
    try:
        return args.func(args)
    except SearchBudgetExceeded as exc:
        print(f"error: SearchBudgetExceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (X3PError, argparse.ArgumentTypeError, TypeError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
