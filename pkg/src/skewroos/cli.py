"""``skewroos`` command line: construct, bounds, distance, classify, tables."""

from __future__ import annotations

import argparse
import csv
import io
import sys

from . import workbench as wb
from .errors import InputError, InvariantViolation, SkewRoosError, SpecError
from .serialize import dumps, load_json

COMMANDS = ("construct", "bounds", "distance", "classify", "tables")


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors are input errors (exit 1)
        self.print_usage(sys.stderr)
        print(f"error: cli-workbench/UsageError: {message}", file=sys.stderr)
        raise SystemExit(1)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="skewroos", description="Skew cyclic codes: construction, Roos bounds, exact distances.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--spec", help="JSON job spec (tables: optional file of row specs)")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--format", choices=("json", "csv", "human"), default="json")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--budget-subsets", type=int, default=None, help="max column-subset nodes")
    p.add_argument("--budget-subspaces", type=int, default=None, help="max support subspaces")
    p.add_argument("--max-n", type=int, default=None, help="refuse certificate search above this length")
    p.add_argument("--rows", help="tables: comma-separated row numbers (default all)")
    return p


# --------------------------------------------------------------- rendering

def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k in sorted(obj):
            yield from _flatten(obj[k], f"{prefix}{k}." if not prefix else f"{prefix}{k}.")
    elif isinstance(obj, list) and obj and isinstance(obj[0], (dict, list)):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}{i}.")
    else:
        yield prefix[:-1], obj


def _cell(v) -> str:
    if isinstance(v, list):
        return " ".join(str(x) for x in v)
    if isinstance(v, dict):
        return f"{v['lo']}..{v['hi']}" if set(v) == {"lo", "hi"} else str(v)
    if isinstance(v, bool):
        return "yes" if v else "no"
    return "" if v is None else str(v)


def render_kv(report: dict, fmt: str) -> str:
    if fmt == "json":
        return dumps(report)
    pairs = list(_flatten(report))
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["key", "value"])
        for k, v in pairs:
            w.writerow([k, _cell(v)])
        return buf.getvalue()
    width = max((len(k) for k, _ in pairs), default=0)
    return "".join(f"{k.ljust(width)}  {_cell(v)}\n" for k, v in pairs)


TABLE_COLUMNS = ["row", "K", "F", "E", "alpha", "b", "delta", "r", "T", "n", "k", "d_H",
                 "d_H_singleton", "mds", "d_R_singleton", "d_R", "mrd"]


def render_tables(report: dict, fmt: str) -> str:
    if fmt == "json":
        return dumps(report)
    rows = report["rows"]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(TABLE_COLUMNS)
        for r in rows:
            w.writerow([_cell(r[c]) for c in TABLE_COLUMNS])
        return buf.getvalue()
    out = ["Hamming metric", _text_table(rows, ["row", "K", "F", "E", "alpha", "b", "delta", "r", "T", "[n,k,d]"],
                                         lambda r: f"[{r['n']},{r['k']},{_cell(r['d_H'])}]" + ("*" if r["mds"] else "")),
           "", "Rank metric",
           _text_table(rows, ["row", "K", "F", "E", "delta", "r", "n", "k", "d_R_singleton", "d_R"],
                       lambda r: _cell(r["d_R"]) + ("*" if r["mrd"] else ""))]
    if report["mismatches"]:
        out += ["", "Mismatches:"] + [f"  {m}" for m in report["mismatches"]]
    return "\n".join(out) + "\n"


def _text_table(rows, cols, last) -> str:
    body = [[_cell(r[c]) for c in cols[:-1]] + [last(r)] for r in rows]
    widths = [max(len(c), *(len(b[i]) for b in body)) for i, c in enumerate(cols)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths))]
    lines += ["  ".join(v.ljust(w) for v, w in zip(b, widths)) for b in body]
    return "\n".join(lines)


# -------------------------------------------------------------------- main

def run(args) -> tuple[str, int]:
    budgets = wb.Budgets(args.budget_subsets, args.budget_subspaces, max(1, args.threads), args.max_n)
    if args.command == "tables":
        specs = load_json(args.spec)["rows"] if args.spec else None
        rows = [int(x) for x in args.rows.split(",")] if args.rows else None
        report = wb.tables_report(budgets, rows, specs)
        text = render_tables(report, args.format)
        status = 0
        if report["mismatches"]:
            for m in report["mismatches"]:
                print(f"mismatch: {m}", file=sys.stderr)
            status = 2
        return text, status
    if not args.spec:
        raise SpecError(f"{args.command} needs --spec FILE")
    code = wb.code_from_spec(load_json(args.spec))
    if args.command == "construct":
        report = wb.construct_report(code)
    elif args.command == "bounds":
        report = wb.bounds_report(code, budgets)
    elif args.command == "distance":
        report = wb.distance_report(code, budgets)
    else:
        report = wb.classify_report(code, budgets)
    return render_kv(report, args.format), 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text, status = run(args)
    except InvariantViolation as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return 2
    except (InputError, SkewRoosError) as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return 1
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
