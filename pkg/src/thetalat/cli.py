"""Batch command line surface: build lattices, compute exact coefficients,
reproduce the stored golden tables, and run the congruence verifiers.

Exit codes are a stable contract: 0 pass, 1 usage, 2 invariant or mismatch,
3 budget exhausted, 4 cache problem.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import congruence, engine, errors, forms, lattices, refdata, schema

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVARIANT = 2
EXIT_BUDGET = 3
EXIT_CACHE = 4


@dataclass
class RunConfig:
    cache_dir: str
    workers: int = 1
    budget: int = engine.DEFAULT_NODE_BUDGET
    fmt: str = "text"
    verbose: int = 0

    def __post_init__(self):
        if self.workers < 1:
            raise UsageError("workers must be >= 1")
        if self.budget < 0:
            raise UsageError("budget must be >= 0")
        os.makedirs(self.cache_dir, exist_ok=True)


class UsageError(Exception):
    pass


def default_cache_dir() -> str:
    return os.environ.get("THETA_CACHE_DIR", "cache")


def _emit(obj, schema_name, cfg, text_fn):
    if cfg.fmt == "json":
        bad = schema.conforms(obj, schema_name)
        if bad:
            raise errors.AssertionUnverified(
                f"output violates {schema_name} schema: {bad[:3]}"
            )
        print(json.dumps(obj, sort_keys=True))
    else:
        print(text_fn(obj))


# -- t-spec parsing ----------------------------------------------------------

def parse_t_spec(spec: str, degree: int) -> forms.HalfIntMat:
    """Bracket tuples: deg1 'a', deg2 'a,b,c', deg3 'a,b,c:d,e,f'."""
    try:
        if degree == 1:
            (a,) = (int(x) for x in spec.split(","))
            t = forms.HalfIntMat((a,), ())
            if a < 0:
                raise ValueError("negative diagonal")
            return t
        if degree == 2:
            a, b, c = (int(x) for x in spec.split(","))
            return forms.decode_binary(a, b, c)
        if degree == 3:
            left, _, right = spec.partition(":")
            a, b, c = (int(x) for x in left.split(","))
            d, e, f = (int(x) for x in right.split(","))
            return forms.decode_ternary(a, b, c, d, e, f)
    except (ValueError, forms.NotPositiveSemidefinite) as exc:
        raise UsageError(f"bad --t for degree {degree}: {spec!r} ({exc})")
    raise UsageError("--t supports degrees 1..3; use --ozeki for degree 4")


def parse_ozeki_spec(spec: str) -> forms.HalfIntMat:
    try:
        parts = tuple(int(x) for x in spec.split(","))
        if len(parts) != 10:
            raise ValueError(f"expected 10 entries, got {len(parts)}")
        return forms.decode_ozeki4(*parts)
    except (ValueError, forms.NotPositiveSemidefinite) as exc:
        raise UsageError(f"bad --ozeki tuple {spec!r} ({exc})")


# -- commands ----------------------------------------------------------------

def cmd_build(args, cfg: RunConfig) -> int:
    label = lattices.normalize_label(args.label)
    lat = lattices.build_lattice(label)
    store = engine.ShellStore(lat, cache_dir=cfg.cache_dir)
    store.ensure(2)
    roots = store.shell_size(2)
    obj = {
        "label": lat.label,
        "rank": lat.rank,
        "det": lat.det,
        "coxeter": lat.coxeter,
        "roots": roots,
        "gram": [list(r) for r in lat.gram],
    }
    if label == "omega":
        store.ensure(4)
        obj["min4"] = store.shell_size(4)

    want_gram = cfg.fmt == "csv"
    if want_gram:
        cfg.fmt = "text"

    def text(o):
        lines = [f"label={o['label']} rank={o['rank']} det={o['det']}"]
        if o["coxeter"] is not None:
            lines.append(f"coxeter={o['coxeter']}")
        lines.append(f"roots={o['roots']}")
        if "min4" in o:
            lines.append(f"min4={o['min4']}")
        if want_gram:
            lines.append(lat.to_csv())
        return "\n".join(lines)

    _emit(obj, "lattice", cfg, text)
    expected_roots = 24 * lat.coxeter if lat.coxeter is not None else roots
    if lat.coxeter is not None and roots != expected_roots:
        return EXIT_INVARIANT
    return EXIT_OK


def cmd_export(args, cfg: RunConfig) -> int:
    label = lattices.normalize_label(args.label)
    print(lattices.export_lattice(label, cfg.fmt if cfg.fmt != "text"
                                  else "csv"))
    return EXIT_OK


def _coefficient(lat, t, cfg, ledger):
    """Ledger-first coefficient: completed work is read back, not redone."""
    key = t.key()
    prev = ledger.lookup(lat.label, key)
    if prev is not None:
        return {
            "lattice": lat.label, "key": key, "degree": len(t.diag),
            "coeff": int(prev["coeff"]), "d_T": t.det2t(),
            "method": prev.get("method", "ledger"), "wall_time": 0.0,
            "partitions": prev.get("partitions"), "from_ledger": True,
        }
    detail = engine.theta_coefficient(
        lat, t, budget=cfg.budget, workers=cfg.workers,
        cache_dir=cfg.cache_dir,
    )
    ledger.record(engine.ledger_record(detail))
    return {
        "lattice": lat.label, "key": key, "degree": len(t.diag),
        "coeff": detail["count"], "d_T": t.det2t(),
        "method": detail["method"], "wall_time": detail["wall_time"],
        "partitions": detail.get("partitions"), "from_ledger": False,
    }


def cmd_coeff(args, cfg: RunConfig) -> int:
    label = lattices.normalize_label(args.lat)
    lat = lattices.build_lattice(label)
    if args.ozeki:
        if args.t:
            raise UsageError("--t and --ozeki are mutually exclusive")
        t = parse_ozeki_spec(args.ozeki)
        degree = 4
    else:
        if not args.t:
            raise UsageError("one of --t or --ozeki is required")
        degree = args.deg
        if degree is None:
            degree = 3 if ":" in args.t else (2 if "," in args.t else 1)
        t = parse_t_spec(args.t, degree)
    ledger = engine.Ledger.open(cfg.cache_dir)
    obj = _coefficient(lat, t, cfg, ledger)

    def text(o):
        src = " (ledger)" if o["from_ledger"] else ""
        return (f"a(theta_{o['lattice']}^({o['degree']}); {o['key']}) = "
                f"{o['coeff']}  d_T={o['d_T']} method={o['method']}{src}")

    _emit(obj, "coeff", cfg, text)
    return EXIT_OK


def _table_rows_coeff(table, cfg, ledger, progress=None):
    rows = []
    for col in table.columns:
        lat = lattices.build_lattice(col)
        for spec, expected in zip(table.classes, table.values[col]):
            t = table.half_int(spec)
            got = _coefficient(lat, t, cfg, ledger)
            rows.append({
                "row": "[" + ",".join(str(x) for x in spec) + "]",
                "column": col,
                "expected": expected,
                "computed": got["coeff"],
                "d_T": t.det2t(),
                "status": "match" if got["coeff"] == expected else "mismatch",
            })
            if progress:
                progress(f"{table.table_id} {col} {spec}")
    return rows


def _table_rows_coxeter(cfg):
    spec = refdata.TABLE_PAPER_3
    rows = []
    for col, expected in zip(spec["columns"], spec["values"]):
        got = lattices.coxeter_number(col)
        rows.append({
            "row": col, "column": "coxeter", "expected": expected,
            "computed": got,
            "status": "match" if got == expected else "mismatch",
        })
    return rows


def _table_rows_ozeki(table_id, cfg, ledger, row_filter=None, progress=None):
    lat = lattices.build_lattice("omega")
    rows = []
    for row in refdata.OZEKI_TABLES[table_id]:
        if row_filter and row.row_id not in row_filter:
            continue
        t = row.half_int()
        got = _coefficient(lat, t, cfg, ledger)
        out = {
            "row": row.row_id,
            "column": "omega",
            "expected": row.value,
            "computed": got["coeff"],
            "d_T": t.det2t(),
        }
        if row.anomaly:
            out["status"] = "anomaly"
            out["note"] = row.note
        else:
            out["status"] = ("match" if got["coeff"] == row.value
                             else "mismatch")
        rows.append(out)
        if progress:
            progress(f"{table_id} {row.row_id}")
    return rows


def cmd_table(args, cfg: RunConfig) -> int:
    table_id = args.id
    if table_id not in refdata.TABLE_IDS:
        raise UsageError(f"unknown table id {table_id!r}; "
                         f"known: {', '.join(refdata.TABLE_IDS)}")
    row_filter = None
    if args.rows:
        row_filter = set(args.rows.split(","))
        known = {r.row_id for rows in refdata.OZEKI_TABLES.values()
                 for r in rows}
        bad = row_filter - known
        if bad:
            raise UsageError(f"unknown rows: {sorted(bad)}")
    ledger = engine.Ledger.open(cfg.cache_dir)
    progress = (lambda m: print(f"# {m}", file=sys.stderr)) \
        if cfg.verbose else None
    if table_id == "paper-3":
        rows = _table_rows_coxeter(cfg)
        citation = refdata.TABLE_PAPER_3["citation"]
    elif table_id in refdata.COEFF_TABLES:
        table = refdata.COEFF_TABLES[table_id]
        rows = _table_rows_coeff(table, cfg, ledger, progress)
        citation = table.citation
    else:
        rows = _table_rows_ozeki(table_id, cfg, ledger, row_filter, progress)
        citation = refdata.OZEKI_CITATION
    verdict_rows = [r for r in rows if r["status"] != "anomaly"]
    overall = ("pass" if all(r["status"] == "match" for r in verdict_rows)
               else "fail")
    obj = {
        "table_id": table_id,
        "fixture_version": refdata.FIXTURE_VERSION,
        "citation": citation,
        "rows": rows,
        "overall": overall,
    }

    def text(o):
        w = max(len(r["row"]) for r in o["rows"]) + 2
        lines = [f"table {o['table_id']} (fixture v{o['fixture_version']})"]
        for r in o["rows"]:
            col = r.get("column", "")
            lines.append(
                f"  {r['row']:<{w}} {col:<8} expected={r['expected']} "
                f"computed={r['computed']} {r['status'].upper()}"
            )
            if r.get("note"):
                lines.append(f"    note: {r['note']}")
        lines.append(f"overall: {o['overall'].upper()}")
        return "\n".join(lines)

    _emit(obj, "table", cfg, text)
    return EXIT_OK if overall == "pass" else EXIT_INVARIANT


CLAIMS = ("thm3.1.i", "thm3.1.ii", "thm3.1.iii", "thm4.1",
          "obs-mod7", "obs-mod49", "intro-mod23")


def cmd_verify(args, cfg: RunConfig) -> int:
    claim = args.claim
    if claim not in CLAIMS:
        raise UsageError(f"unknown claim {claim!r}; known: {', '.join(CLAIMS)}")
    ledger = engine.Ledger.open(cfg.cache_dir)
    progress = (lambda m: print(f"# {m}", file=sys.stderr)) \
        if cfg.verbose else None
    kw = dict(cache_dir=cfg.cache_dir, ledger=ledger, workers=cfg.workers,
              budget=cfg.budget, progress=progress)
    if claim.startswith("thm3.1."):
        report = congruence.verify_theorem_3_1(claim.rsplit(".", 1)[1], **kw)
    elif claim == "thm4.1":
        report = congruence.verify_theorem_4_1(**kw)
    else:
        part = {"obs-mod7": "mod7", "obs-mod49": "mod49",
                "intro-mod23": "mod23"}[claim]
        report = congruence.verify_observations((part,), **kw)
    reports_dir = os.path.join(cfg.cache_dir, "reports")
    os.makedirs(reports_dir, exist_ok=True)
    report_path = os.path.join(reports_dir, f"{claim}.json")
    with open(report_path, "w") as fh:
        fh.write(report.to_json())
    obj = json.loads(report.to_json())
    bad = schema.conforms(obj, "report")
    if bad:
        raise errors.AssertionUnverified(f"report schema violation: {bad[:3]}")
    if cfg.fmt == "json":
        print(report.to_json())
    else:
        print(report.to_text())
        print(f"report written to {report_path}")
    return EXIT_OK if report.overall == "pass" else EXIT_INVARIANT


# -- argument plumbing -------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _add_common(p):
    p.add_argument("--cache-dir", default=None,
                   help="cache root (default: $THETA_CACHE_DIR or ./cache)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--budget", type=float,
                   default=float(engine.DEFAULT_NODE_BUDGET),
                   help="backtracking node budget")
    p.add_argument("--format", choices=("text", "json", "csv"),
                   default="text")
    p.add_argument("-v", "--verbose", action="count", default=0)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="thetalat",
                 description="Exact Siegel theta coefficients of even "
                             "lattices, with congruence verifiers.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", parents=[], help="construct one lattice and "
                       "print its invariants")
    p.add_argument("--label", required=True)
    _add_common(p)
    p.set_defaults(fn=cmd_build)

    p = sub.add_parser("export", help="print a Gram matrix (csv or json)")
    p.add_argument("--label", required=True)
    _add_common(p)
    p.set_defaults(fn=cmd_export)

    p = sub.add_parser("coeff", help="one exact theta coefficient")
    p.add_argument("--lat", required=True)
    p.add_argument("--deg", type=int, choices=(1, 2, 3, 4))
    p.add_argument("--t", help="degree 1: 'a'; degree 2: 'a,b,c'; "
                   "degree 3: 'a,b,c:d,e,f'")
    p.add_argument("--ozeki", help="degree-4 ten-tuple "
                   "'t11,t22,t33,t44,u12,u13,u23,u14,u24,u34'")
    _add_common(p)
    p.set_defaults(fn=cmd_coeff)

    p = sub.add_parser("table", help="reproduce a stored golden table")
    p.add_argument("--id", required=True)
    p.add_argument("--rows", help="comma list of row ids (ozeki tables)")
    _add_common(p)
    p.set_defaults(fn=cmd_table)

    p = sub.add_parser("verify", help="run a congruence verifier")
    p.add_argument("--claim", required=True)
    _add_common(p)
    p.set_defaults(fn=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        cfg = RunConfig(
            cache_dir=args.cache_dir or default_cache_dir(),
            workers=args.workers,
            budget=int(args.budget),
            fmt=args.format,
            verbose=args.verbose,
        )
        return args.fn(args, cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except errors.UnknownLabel as exc:
        print(f"error: unsupported label: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except errors.BudgetExceeded as exc:
        print(f"error: budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (errors.CacheMiss, errors.CorruptCache) as exc:
        print(f"error: cache: {exc}", file=sys.stderr)
        return EXIT_CACHE
    except errors.ThetalatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    raise SystemExit(main())
