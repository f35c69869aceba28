"""Batch command-line interface.

Exit codes: 0 success, 1 verification mismatch, 2 tier refusal, 3 I/O error,
4 malformed input.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import reports
from .graphs import MalformedGraph6Error, generate_all, graph6_decode, graph6_encode

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_TIER = 2
EXIT_IO = 3
EXIT_BADINPUT = 4

LONG_BASE_ORDER = 9  # base orders 9 and 10 take hours; demand explicit opt-in


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if getattr(args, "verbose", False) else logging.WARNING,
        format="%(message)s",
    )
    try:
        return args.func(args)
    except MalformedGraph6Error as exc:
        print(f"malformed input: {exc}", file=sys.stderr)
        return EXIT_BADINPUT
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="indefdist",
        description="Exact classification of two-distance configurations in "
        "pseudo-Euclidean spaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--workers", type=int, default=1)
        p.add_argument(
            "--checkpoint-dir",
            default=os.environ.get("INDEFDIST_CHECKPOINT_DIR"),
            help="directory for resumable level data "
            "(default: $INDEFDIST_CHECKPOINT_DIR)",
        )
        p.add_argument("--resume", action="store_true")
        p.add_argument("--allow-long", action="store_true")
        p.add_argument("--max-order", type=int, default=None)
        p.add_argument("--out", default=None, help="report path (.json)")
        p.add_argument(
            "--format",
            choices=("summary", "json", "csv", "dot", "graph6"),
            default="summary",
            help="what to print on stdout",
        )
        p.add_argument("--figures", action="store_true")
        p.add_argument("--verbose", "-v", action="store_true")

    pc = sub.add_parser("classify", help="largest proper configurations of a cell")
    pc.add_argument("--p", type=int, required=True)
    pc.add_argument("--q", type=int, required=True)
    pc.add_argument(
        "--branch",
        choices=("+1", "-1", "both"),
        default="both",
        help="restrict the search to one coefficient branch",
    )
    common(pc)
    pc.set_defaults(func=cmd_classify)

    ps = sub.add_parser("spherical", help="largest proper spherical configurations")
    ps.add_argument("--p", type=int, required=True)
    ps.add_argument("--q", type=int, required=True)
    common(ps)
    ps.set_defaults(func=cmd_spherical)

    pg = sub.add_parser("check-graph", help="per-graph eigenvalue and type analysis")
    pg.add_argument("graph6", help="graph6 string, or - to read lines from stdin")
    pg.add_argument("--p", type=int, required=True)
    pg.add_argument("--q", type=int, required=True)
    pg.add_argument("--branch", choices=("+1", "-1", "both"), default="both")
    pg.add_argument("--json", action="store_true")
    pg.add_argument("--verbose", "-v", action="store_true")
    pg.set_defaults(func=cmd_check_graph)

    pv = sub.add_parser("verify-tables", help="reproduce the published tables")
    pv.add_argument("--tier", choices=("small", "medium", "full"), default="small")
    pv.add_argument("--workers", type=int, default=1)
    pv.add_argument(
        "--checkpoint-dir", default=os.environ.get("INDEFDIST_CHECKPOINT_DIR")
    )
    pv.add_argument("--resume", action="store_true")
    pv.add_argument("--verbose", "-v", action="store_true")
    pv.set_defaults(func=cmd_verify_tables)

    pco = sub.add_parser("construct", help="explicit coordinate families")
    pco.add_argument(
        "family", choices=("twentytwo", "family-pq1", "johnson")
    )
    pco.add_argument("--n", type=int, default=None, help="family parameter")
    pco.add_argument("--p", type=int, default=None, help="johnson family parameter")
    pco.add_argument("--out", default=None)
    pco.add_argument("--format", choices=("json", "csv"), default="json")
    pco.add_argument("--verbose", "-v", action="store_true")
    pco.set_defaults(func=cmd_construct)

    pge = sub.add_parser("generate", help="stream one graph per isomorphism class")
    pge.add_argument("--n", type=int, required=True)
    pge.add_argument("--out", default=None)
    pge.add_argument("--verbose", "-v", action="store_true")
    pge.set_defaults(func=cmd_generate)
    return parser


def _tier_guard(p, q, allow_long) -> int | None:
    base = p + q + 3
    if base > 10:
        print(
            f"cell ({p},{q}) needs base order {base} > 10: beyond the supported tier",
            file=sys.stderr,
        )
        return EXIT_TIER
    if base >= LONG_BASE_ORDER and not allow_long:
        print(
            f"cell ({p},{q}) needs base order {base} (a multi-hour run); "
            "pass --allow-long to proceed",
            file=sys.stderr,
        )
        return EXIT_TIER
    return None


def _emit(args, report: dict) -> None:
    text = reports.dump_report(report)
    if args.out:
        out = Path(args.out)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text)
        out.with_suffix(".csv").write_text(reports.report_csv(report))
        if args.figures:
            reports.render_figures(report, out.with_suffix(".d"))
    if args.format == "json":
        sys.stdout.write(text)
    elif args.format == "csv":
        sys.stdout.write(reports.report_csv(report))
    elif args.format == "dot":
        sys.stdout.write(reports.report_dot(report))
    elif args.format == "graph6":
        sys.stdout.write(reports.winners_graph6(report))
    else:
        counts = report["counts"]
        cnt = "inf" if report["infinite"] else counts["configurations"]
        print(
            f'{report["kind"]} ({report["cell"]["p"]},{report["cell"]["q"]}): '
            f'max order {report["max_order"]}, {cnt} configuration(s), '
            f'{counts["distinct_graphs"]} distinct graph(s)'
        )


def _progress(args):
    if getattr(args, "verbose", False):
        return lambda msg: print(msg, file=sys.stderr)
    return lambda msg: None


def cmd_classify(args) -> int:
    guard = _tier_guard(args.p, args.q, args.allow_long)
    if guard is not None:
        return guard
    from .search import classify

    branches = {"+1": (1,), "-1": (-1,), "both": None}[args.branch]
    result = classify(
        args.p,
        args.q,
        workers=args.workers,
        checkpoint_dir=args.checkpoint_dir,
        resume=args.resume,
        max_order=args.max_order,
        progress=_progress(args),
        branches=branches,
    )
    report = reports.classification_report(result, workers=args.workers)
    _emit(args, report)
    return EXIT_OK


def cmd_spherical(args) -> int:
    guard = _tier_guard(args.p, args.q, args.allow_long)
    if guard is not None:
        return guard
    from .spherical import classify_spherical

    result = classify_spherical(
        args.p,
        args.q,
        workers=args.workers,
        checkpoint_dir=args.checkpoint_dir,
        resume=args.resume,
        progress=_progress(args),
    )
    report = reports.spherical_report(result, workers=args.workers)
    _emit(args, report)
    return EXIT_OK


def cmd_check_graph(args) -> int:
    sources = (
        [line.strip() for line in sys.stdin if line.strip()]
        if args.graph6 == "-"
        else [args.graph6]
    )
    branches = {"+1": (1,), "-1": (-1,), "both": (1, -1)}[args.branch]
    out = []
    for g6 in sources:
        out.append(_analyze_graph(g6, args.p, args.q, branches))
    if args.json:
        print(json.dumps(out, indent=1, sort_keys=True))
    else:
        for block in out:
            _print_analysis(block)
    return EXIT_OK


def _analyze_graph(g6: str, p: int, q: int, branches) -> dict:
    from .embedding import RelationDissimilarity, classify_type, embedding_dimension
    from .search import candidate_eigenvalues, graph_jperp_spectrum, make_lambda_key
    from .spherical import spherical_radius

    g = graph6_decode(g6)
    block = {"graph6": g6, "order": g.n, "p": p, "q": q, "candidates": []}
    if g.is_complete() or g.is_empty():
        block["degenerate"] = "single relation"
        return block
    spectrum = graph_jperp_spectrum(g)
    for br in branches:
        cands, boundary = candidate_eigenvalues(g, p, q, br, spectrum)
        if boundary:
            block.setdefault("boundary", []).append(br)
        for c in cands:
            key = make_lambda_key(c.lam, br)
            rd = RelationDissimilarity(g, br, key.b_value())
            emb = embedding_dimension(rd).as_pair()
            t = classify_type(rd)
            entry = {
                "branch": br,
                "lambda": reports._value_json(c.lam),
                "lambda_pretty": reports._value_pretty(c.lam),
                "b": reports._value_json(key.b_value()),
                "b_pretty": reports._value_pretty(key.b_value()),
                "b_decimal": reports._value_decimal(key.b_value()),
                "embedding": list(emb),
                "proper": emb == (p, q),
                "type": t,
                "spherical": t == 2,
                "radius_decimal": None,
            }
            if t == 2:
                placement = spherical_radius(rd)
                entry["radius_decimal"] = reports._value_decimal(placement.radius)
            block["candidates"].append(entry)
    return block


def _print_analysis(block: dict) -> None:
    print(f"graph {block['graph6']} (order {block['order']}) in "
          f"R^{{{block['p']},{block['q']}}}:")
    if "degenerate" in block:
        print(f"  degenerate: {block['degenerate']}")
        return
    if not block["candidates"]:
        print("  no admissible eigenvalue: not representable at this cell")
    for c in block["candidates"]:
        print(
            f"  a={c['branch']:+d}  lambda={c['lambda_pretty']}  "
            f"b={c['b_pretty']} ({c['b_decimal']})  "
            f"embedding={tuple(c['embedding'])}  proper={c['proper']}  "
            f"type={c['type']}  spherical={c['spherical']}"
            + (f"  r={c['radius_decimal']}" if c["radius_decimal"] else "")
        )
    if "boundary" in block:
        print(f"  note: boundary eigenvalue -1/2 present on branch(es) {block['boundary']}")


def cmd_verify_tables(args) -> int:
    from .search import classify
    from .spherical import classify_spherical

    cells = reports.tier_cells(args.tier)
    cache: dict = {}
    failures = 0
    for p, q in cells:
        result = classify(
            p,
            q,
            workers=args.workers,
            checkpoint_dir=args.checkpoint_dir,
            resume=args.resume,
            progress=_progress(args),
            cell_cache=cache,
        )
        got = (result.max_order, result.config_count())
        want = reports.TABLE_AMBIENT[(p, q)]
        failures += _report_cell("ambient", p, q, got, want)
        if ("spherical", (p, q)) in reports.TABLE_SKIPPED:
            print(
                f"SKIP spherical ({p},{q}): "
                f"{reports.TABLE_SKIPPED[('spherical', (p, q))]}"
            )
            continue
        sph_result = classify_spherical(
            p,
            q,
            workers=args.workers,
            checkpoint_dir=args.checkpoint_dir,
            resume=args.resume,
            progress=_progress(args),
            cell_cache=cache,
        )
        got_s = (sph_result.max_order, sph_result.config_count())
        want_s = reports.TABLE_SPHERICAL[(p, q)]
        failures += _report_cell("spherical", p, q, got_s, want_s)
    if failures:
        print(f"{failures} cell(s) mismatched")
        return EXIT_MISMATCH
    print("all cells match")
    return EXIT_OK


def _report_cell(kind, p, q, got, want) -> int:
    def fmt(v):
        order, count = v
        return f"{order}_{'inf' if count is None else count}"

    if got == want:
        print(f"PASS {kind} ({p},{q}): {fmt(got)}")
        return 0
    print(f"FAIL {kind} ({p},{q}): got {fmt(got)}, expected {fmt(want)}")
    return 1


def cmd_construct(args) -> int:
    from . import constructions as con

    if args.family == "twentytwo":
        ps = con.build_twentytwo()
    elif args.family == "family-pq1":
        if args.n is None:
            print("family-pq1 requires --n", file=sys.stderr)
            return EXIT_BADINPUT
        try:
            ps = con.build_family_pq1(args.n)
        except ValueError as exc:
            print(str(exc), file=sys.stderr)
            return EXIT_BADINPUT
    else:
        param = args.p if args.p is not None else args.n
        if param is None:
            print("johnson requires --p", file=sys.stderr)
            return EXIT_BADINPUT
        try:
            ps = con.build_johnson_like(param)
        except ValueError as exc:
            print(str(exc), file=sys.stderr)
            return EXIT_BADINPUT
    payload = (
        json.dumps(ps.to_json(), indent=1, sort_keys=True) + "\n"
        if args.format == "json"
        else ps.to_csv()
    )
    if args.out:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        Path(args.out).write_text(payload)
    else:
        sys.stdout.write(payload)
    print(
        f"verification PASS ({ps.size()} points, distances "
        f"{tuple(str(v) for v in ps.distance_values)})",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_generate(args) -> int:
    if not 1 <= args.n <= 10:
        print("generation tier is 1 <= n <= 10", file=sys.stderr)
        return EXIT_TIER
    sink = open(args.out, "w") if args.out else sys.stdout
    try:
        for g in generate_all(args.n):
            sink.write(graph6_encode(g) + "\n")
    finally:
        if args.out:
            sink.close()
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
