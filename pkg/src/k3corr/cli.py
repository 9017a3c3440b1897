"""Command-line interface.

Exit codes: 0 all good, 1 a verification check failed, 2 usage or input
format error.  ``--format kv`` switches reports to deterministic
machine-readable key=value lines.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor

from . import correspondence, picard
from .dataset import DatasetError, RowRecord, load_rows, select_rows
from .polytope import (
    DegeneratePointSet,
    OriginNotInterior,
    hull,
    is_reflexive,
    parse_points_text,
    points_to_text,
    polar_dual,
)
from .weights import newton_polytope, weights_from_text

USAGE_ERROR = 2
CHECK_FAILED = 1


def _read_polytope(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            pts = parse_points_text(fh.read())
        return hull(pts)
    except OSError as exc:
        raise SystemExit(f"error: cannot read {path}: {exc}")
    except (ValueError, DegeneratePointSet) as exc:
        print(f"error: {path}: {exc}", file=sys.stderr)
        raise SystemExit(USAGE_ERROR)


def _weights_arg(text: str):
    try:
        return weights_from_text(text)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise SystemExit(USAGE_ERROR)


def _row_reports(row: RowRecord):
    reports = [correspondence.verify_row(row)]
    if row.bold:
        reports.append(correspondence.verify_swaps(row))
    return row.key, reports


def _print_report(report, fmt: str, suffix: str = "") -> None:
    if fmt == "kv":
        for c in report.checks:
            state = "pass" if c.passed else "fail"
            print(f"row.{report.key}{suffix}.{_kv_name(c.name)}={state}")
    else:
        for line in report.lines():
            print(line)


def _kv_name(name: str) -> str:
    return (
        name.replace(" ", "_")
        .replace("=", "_eq_")
        .replace("->", "_to_")
        .replace(",", "+")
    )


def cmd_verify_table(args) -> int:
    try:
        rows = load_rows(args.data)
    except (DatasetError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    if args.row:
        rows = select_rows(rows, args.row)
        if not rows:
            all_rows = load_rows(args.data)
            print(f"no row matches {args.row!r}; available rows:", file=sys.stderr)
            for row in all_rows:
                print(f"  {row.key}  (rank {row.rank})", file=sys.stderr)
            return USAGE_ERROR
    if args.parallel:
        with ProcessPoolExecutor() as pool:
            results = list(pool.map(_row_reports, rows))
    else:
        results = [_row_reports(row) for row in rows]
    order = {row.key: i for i, row in enumerate(rows)}
    results.sort(key=lambda kr: order[kr[0]])
    ok = True
    for key, reports in results:
        for report, suffix in zip(reports, ("", ".swaps")):
            _print_report(report, args.format, suffix)
            ok = ok and report.passed
        if args.format != "kv":
            verdict = "PASS" if all(r.passed for r in reports) else "FAIL"
            print(f"row {key}: {verdict}")
    if args.format != "kv":
        print(f"{'all rows pass' if ok else 'FAILURES detected'}")
    return 0 if ok else CHECK_FAILED


def cmd_newton(args) -> int:
    ws = _weights_arg(args.weights)
    p = newton_polytope(ws)
    print(points_to_text(p.vertices, comment=f"newton polytope of {ws}"), end="")
    return 0


def cmd_dual(args) -> int:
    p = _read_polytope(args.file)
    try:
        d = polar_dual(p)
    except OriginNotInterior as exc:
        print(f"error: {exc}", file=sys.stderr)
        return CHECK_FAILED
    print(points_to_text(d.vertices, comment="polar dual vertices"), end="")
    return 0


def cmd_reflexive(args) -> int:
    p = _read_polytope(args.file)
    try:
        answer = is_reflexive(p)
    except (ValueError, OriginNotInterior) as exc:
        print(f"reflexive=false  # {exc}")
        return 0
    print(f"reflexive={'true' if answer else 'false'}")
    return 0


def cmd_points(args) -> int:
    p = _read_polytope(args.file)
    print(points_to_text(p.lattice_points, comment="lattice points"), end="")
    return 0


def cmd_picard(args) -> int:
    if "," in args.target:
        p = newton_polytope(_weights_arg(args.target))
    else:
        p = _read_polytope(args.target)
    try:
        bk = picard.picard_rank(p)
    except picard.NotReflexive as exc:
        print(f"error: {exc}", file=sys.stderr)
        return CHECK_FAILED
    print(f"rho={bk.rho} toric={bk.toric_part} correction={bk.correction}")
    if args.format != "kv":
        print(f"dual lattice points: {bk.dual_points}")
        dual_rho = picard.picard_rank(polar_dual(p)).rho
        print(f"rho of polar dual: {dual_rho}")
        for pair in bk.edge_pairs:
            if pair.contribution:
                print(
                    f"edge {pair.edge} x dual edge {pair.dual_edge}: "
                    f"{pair.interior} * {pair.interior_dual} = {pair.contribution}"
                )
    return 0


def cmd_search_sub(args) -> int:
    ws = _weights_arg(args.weights)
    p = newton_polytope(ws)
    result = correspondence.search_sub_reflexive(
        p, max_results=args.max_results, max_depth=args.max_depth
    )
    print(
        f"# {len(result.found)} reflexive subpolytopes of newton({ws}) "
        f"within depth {args.max_depth}"
        f"{' (limits exhausted)' if result.exhausted else ''}"
    )
    for i, q in enumerate(result.found):
        bk = picard.picard_rank(q)
        print(f"# subpolytope {i}: rho={bk.rho} l0={bk.correction}")
        print(points_to_text(q.vertices), end="")
    return 0


def cmd_amoeba(args) -> int:
    rows = select_rows(load_rows(args.data), args.row)
    if len(rows) != 1:
        print(
            f"selector {args.row!r} matches {len(rows)} rows; use a full key:",
            file=sys.stderr,
        )
        for row in load_rows(args.data):
            print(f"  {row.key}", file=sys.stderr)
        return USAGE_ERROR
    row = rows[0]
    try:
        i = row.ids.index(args.src)
        j = row.ids.index(args.dst)
    except ValueError:
        print(f"row {row.key} has families {row.ids}", file=sys.stderr)
        return USAGE_ERROR
    try:
        iso = correspondence.derive_iso(row, i, j)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return CHECK_FAILED
    m = correspondence.amoeba_map(iso)
    print(f"# amoeba map {args.src} -> {args.dst} (log coordinates)")
    for r in m:
        print(" ".join(str(x) for x in r))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="k3corr",
        description="Exact lattice-polytope checks for weighted K3 correspondences",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    vt = sub.add_parser("verify-table", help="verify table rows")
    vt.add_argument("--row", help="row key (e.g. 26-34-76) or a single family id")
    vt.add_argument("--format", choices=("text", "kv"), default="text")
    vt.add_argument("--data", help="alternative dataset JSON path")
    vt.add_argument("--parallel", action="store_true")
    vt.set_defaults(fn=cmd_verify_table)

    nw = sub.add_parser("newton", help="newton polytope of a weight system")
    nw.add_argument("weights", help="comma-separated, e.g. 1,6,14,21")
    nw.set_defaults(fn=cmd_newton)

    du = sub.add_parser("dual", help="polar dual of the hull of a point file")
    du.add_argument("file")
    du.set_defaults(fn=cmd_dual)

    rf = sub.add_parser("reflexive", help="is the hull of a point file reflexive")
    rf.add_argument("file")
    rf.set_defaults(fn=cmd_reflexive)

    pt = sub.add_parser("points", help="lattice points of the hull of a point file")
    pt.add_argument("file")
    pt.set_defaults(fn=cmd_points)

    pc = sub.add_parser("picard", help="Picard rank of a file or weight system")
    pc.add_argument("target", metavar="FILE|WEIGHTS")
    pc.add_argument("--format", choices=("text", "kv"), default="text")
    pc.set_defaults(fn=cmd_picard)

    ss = sub.add_parser("search-sub", help="reflexive subpolytope search")
    ss.add_argument("weights")
    ss.add_argument("--max-depth", type=int, default=3)
    ss.add_argument("--max-results", type=int, default=64)
    ss.set_defaults(fn=cmd_search_sub)

    am = sub.add_parser("amoeba", help="amoeba map between two families of a row")
    am.add_argument("--row", required=True)
    am.add_argument("--from", dest="src", type=int, required=True)
    am.add_argument("--to", dest="dst", type=int, required=True)
    am.add_argument("--data", help="alternative dataset JSON path")
    am.set_defaults(fn=cmd_amoeba)
    return ap


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except SystemExit as exc:
        if isinstance(exc.code, str):
            print(exc.code, file=sys.stderr)
            return USAGE_ERROR
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
