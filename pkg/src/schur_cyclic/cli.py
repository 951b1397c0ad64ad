"""Command line entry point.

    $ python3 -m schur_cyclic table t1 --kmax 12 --format csv
    $ python3 -m schur_cyclic construct --q 2 --k 10 --s 3 --m 1
    $ python3 -m schur_cyclic verify theorem1 --n 15
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from dataclasses import asdict, dataclass, field

from . import restricted as rw
from .cyclic import (bounds, from_generating_set, mir12_square_generator, square_spec,
                     subfield_subcode_oracle)
from .cyclotomic import IndexSet, closure, negate
from .linear import CAP_ENV, min_distance, schur_square, schur_square_rank
from .verify import SUITES, run_suite

SCHEMA = "schur-cyclic/1"
CSV_HEADER = ("k", "n", "dim_c", "d_c_lb", "dim_csq", "d_csq_lb", "exact_flags")
PROVENANCE = ("recurrence", "enumeration", "rank-oracle", "exhaustive-distance", "witness", "bound-only")


@dataclass
class RunReport:
    command: list
    parameters: dict
    results: list = field(default_factory=list)
    oracle_agreement: dict = field(default_factory=dict)
    seeds: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)
    schema: str = SCHEMA

    def __post_init__(self):
        # keep every field JSON-native so that a parse of the dump compares equal
        for name in ("command", "parameters", "results", "oracle_agreement", "seeds", "timings"):
            setattr(self, name, json.loads(json.dumps(getattr(self, name))))
        for item in self.results:
            for tag in item.get("provenance", {}).values():
                if tag not in PROVENANCE:
                    raise ValueError(f"unknown provenance {tag!r}")

    @property
    def ok(self) -> bool:
        return all(self.oracle_agreement.values())

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        data = json.loads(text)
        if data.get("schema") != SCHEMA:
            raise ValueError(f"unsupported schema {data.get('schema')!r}")
        return cls(**data)


def row_result(row: rw.TableRow, provenance: dict) -> dict:
    out = asdict(row)
    out["flags"] = list(row.flags)
    out["provenance"] = provenance
    return out


# ---------------------------------------------------------------------------
# code selection shared by construct / square / distance
# ---------------------------------------------------------------------------


def _int_list(text):
    return [int(x) for x in text.split(",") if x.strip()]


def _add_code_args(p):
    p.add_argument("--q", type=int, default=2, help="field size")
    p.add_argument("--k", type=int, help="n = q^k - 1 (restricted-weight and q-weight families)")
    p.add_argument("--s", type=int, help="window length")
    p.add_argument("--m", type=int, help="window weight cap")
    p.add_argument("--drop-zero", action="store_true", help="remove 0 from the generating set")
    p.add_argument("--h", type=int, help="q-weight family: weights <= (q-1) h")
    p.add_argument("--n", type=int, help="code length (with --cosets or --t)")
    p.add_argument("--cosets", type=_int_list, help="comma-separated coset representatives")
    p.add_argument("--t", type=int, help="BCH-style family: cosets inside {0..t}")


def _select_code(args):
    """Return (spec, TableRow or None, family, provenance of row fields)."""
    q = args.q
    if args.s is not None or args.m is not None:
        if None in (args.k, args.s, args.m):
            raise ValueError("--k, --s and --m go together")
        spec, row = rw.construct_restricted(q, args.k, args.s, args.m, args.drop_zero)
        prov = dict(dim_C="enumeration", d_C_lower="bound-only", dim_Csq="enumeration",
                    d_Csq_lower="bound-only")
        return spec, row, "restricted", prov
    if args.drop_zero:
        raise ValueError("--drop-zero needs --k/--s/--m")
    if args.h is not None:
        if args.k is None:
            raise ValueError("--h needs --k")
        spec, row = rw.construct_qweight(q, args.k, args.h)
        prov = dict(dim_C="enumeration", d_C_lower="bound-only", dim_Csq="enumeration",
                    d_Csq_lower="bound-only")
        return spec, row, "qweight", prov
    if args.n is None:
        raise ValueError("choose a code: --k/--s/--m, --k/--h, --n/--cosets or --n/--t")
    if args.t is not None:
        spec, row = rw.construct_bch_t(q, args.n, args.t)
        prov = dict(dim_C="enumeration", d_C_lower="bound-only", dim_Csq="enumeration",
                    d_Csq_lower="bound-only")
        return spec, row, "bch", prov
    if args.cosets is None:
        raise ValueError("--n needs --cosets or --t")
    I = closure(IndexSet.of(args.n, args.cosets, q))
    spec = from_generating_set(q, args.n, I)
    return spec, None, "cosets", None


def _spec_result(spec, label="C") -> dict:
    members = spec.I.sorted
    return {"code": label, "q": spec.q, "n": spec.n, "dim": spec.dim, "r": spec.ext.r,
            "generating_set": members if len(members) <= 256 else members[:256] + ["..."],
            "generator": list(spec.g.coeffs), "provenance": {"dim": "enumeration"}}


def _bounds_result(spec) -> dict | None:
    if spec.is_zero():
        return None
    b = bounds(spec)
    out = asdict(b)
    out["kind"] = "bounds"
    out["provenance"] = {k: "bound-only" for k in ("d_C_lower", "d_Csq_lower", "singleton_cap")}
    out["provenance"].update(dim_C="enumeration", dim_Csq="enumeration")
    return out


def _distance_result(spec, label, lower, args) -> dict:
    r = min_distance(spec.generator_matrix(), lower_bound=lower, samples=args.samples, seed=args.seed)
    tag = {"exhaustive": "exhaustive-distance", "witness": "witness", "bound_only": "bound-only"}[r.method]
    return {"kind": "distance", "code": label, "value": r.value, "exact": r.exact,
            "method": r.method, "lower_bound": lower, "provenance": {"value": tag}}


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_construct(args) -> RunReport:
    spec, row, family, prov = _select_code(args)
    results = [_spec_result(spec)]
    if row is not None:
        results.append(row_result(row, prov))
    b = _bounds_result(spec)
    if b:
        results.append(b)
    agree = {}
    if args.oracle and not spec.is_zero():
        G = spec.generator_matrix()
        agree["rank_equals_dim"] = G.rank == spec.dim
        agree["subfield_subcode"] = G == subfield_subcode_oracle(negate(spec.I), spec.ext)
        r = schur_square_rank(G)
        agree["square_rank_equals_sumset"] = r == len(square_spec(spec).I)
        results.append({"kind": "oracle", "square_rank": r, "provenance": {"square_rank": "rank-oracle"}})
    return RunReport(args.argv, {"family": family, **_code_params(args)}, results, agree)


def cmd_square(args) -> RunReport:
    spec, row, family, _ = _select_code(args)
    sq = square_spec(spec)
    results = [_spec_result(spec), _spec_result(sq, "C^2")]
    agree = {}
    if args.oracle:
        G2 = schur_square(spec.generator_matrix())
        agree["products_equal_square"] = G2 == sq.generator_matrix()
        if spec.n <= 255:
            agree["gcd_generator_equals_square"] = mir12_square_generator(spec) == sq.g
        results.append({"kind": "oracle", "square_rank": G2.rank, "provenance": {"square_rank": "rank-oracle"}})
    return RunReport(args.argv, {"family": family, **_code_params(args)}, results, agree)


def cmd_distance(args) -> RunReport:
    spec, row, family, _ = _select_code(args)
    if spec.is_zero():
        raise ValueError("the zero code has no minimum distance")
    b = bounds(spec)
    lower_c = max(b.d_C_lower, row.d_C_lower if row else 0)
    lower_sq = max(b.d_Csq_lower, row.d_Csq_lower if row else 0)
    results = [_distance_result(spec, "C", lower_c, args)]
    if not args.code_only:
        results.append(_distance_result(square_spec(spec), "C^2", lower_sq, args))
    agree = {}
    for r in results:
        agree[f"{r['code']}_above_lower_bound"] = r["value"] >= r["lower_bound"]
    sq_res = results[-1] if not args.code_only else None
    if sq_res and sq_res["exact"]:
        agree["C^2_below_singleton_cap"] = sq_res["value"] <= b.singleton_cap
    return RunReport(args.argv, {"family": family, **_code_params(args)}, results, agree,
                     {"sampling": args.seed})


def cmd_table(args) -> RunReport:
    t0 = time.perf_counter()
    rows = rw.table(args.table, args.kmin, args.kmax)
    results, agree = [], {}
    for row in rows:
        prov = dict(dim_C="recurrence", d_C_lower="recurrence", dim_Csq="enumeration",
                    d_Csq_lower="recurrence")
        item = row_result(row, prov)
        if args.rank_oracle:
            r = schur_square_rank(rw.spec_for_row(args.table, row.k).generator_matrix())
            item["dim_Csq_rank_oracle"] = r
            agree[f"k={row.k}"] = r == row.dim_Csq
        results.append(item)
    return RunReport(args.argv, {"table": args.table, "kmin": args.kmin, "kmax": args.kmax},
                     results, agree, timings={"total": round(time.perf_counter() - t0, 3)})


def cmd_verify(args) -> RunReport:
    names = SUITES if args.suite == "all" else (args.suite,)
    results, agree, timings = [], {}, {}
    for name in names:
        kw = {}
        if name == "theorem1" and args.n:
            kw["ns"] = tuple(args.n)
        if name == "srw":
            if args.k:
                kw["ks"] = tuple(args.k)
            kw["samples"] = args.samples
        if name == "tables" and args.kmax:
            kw["kmax"] = args.kmax
        if name == "triple" and args.kmax:
            kw["kmax"] = args.kmax
        res = run_suite(name, jobs=args.jobs, seed=args.seed, **kw)
        results.append(res.to_dict())
        agree[name] = res.passed
        timings[name] = round(res.seconds, 3)
    return RunReport(args.argv, {"suite": args.suite}, results, agree, {"srw": args.seed}, timings)


def cmd_graph(args) -> RunReport:
    g = rw.build_graph(args.q, args.s, args.m)
    seq = rw.n_sequence(g, args.kmax)
    results = [{"kind": "graph", "vertices": g.order, "charpoly": list(g.charpoly),
                "provenance": {"charpoly": "recurrence"}}]
    results += [{"kind": "count", "k": k, "n_prime": v, "provenance": {"n_prime": "recurrence"}}
                for k, v in enumerate(seq)]
    return RunReport(args.argv, {"q": args.q, "s": args.s, "m": args.m, "kmax": args.kmax}, results)


def _code_params(args):
    keys = ("q", "k", "s", "m", "drop_zero", "h", "n", "cosets", "t")
    return {k: getattr(args, k) for k in keys if getattr(args, k, None) not in (None, False)}


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------


def _rows_of(report):
    return [r for r in report.results if "d_Csq_lower" in r and "k" in r]


def _csv(report) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    rows = _rows_of(report)
    if rows:
        w.writerow(CSV_HEADER)
        for r in rows:
            w.writerow([r["k"], r["n"], r["dim_C"], r["d_C_lower"], r["dim_Csq"], r["d_Csq_lower"],
                        ";".join(r["flags"])])
        return buf.getvalue()
    # other commands: flat key/value rows
    w.writerow(("index", "key", "value"))
    for i, r in enumerate(report.results):
        for key, val in r.items():
            if key != "provenance":
                w.writerow((i, key, json.dumps(val) if isinstance(val, (list, dict)) else val))
    return buf.getvalue()


def _short(v, limit=24):
    if isinstance(v, list) and len(v) > limit:
        return "[" + ", ".join(map(str, v[:limit])) + f", ... ({len(v)} items)]"
    return v


def _text(report) -> str:
    lines = []
    rows = _rows_of(report)
    if rows:
        head = ("k", "n", "dim C", "d(C) >=", "dim C^2", "d(C^2) >=", "")
        body = [(r["k"], r["n"], r["dim_C"], r["d_C_lower"], r["dim_Csq"], r["d_Csq_lower"],
                 " ".join(r["flags"])) for r in rows]
        widths = [max(len(str(x)) for x in col) for col in zip(head, *body)]
        for line in [head] + body:
            lines.append("  ".join(str(x).rjust(w) for x, w in zip(line, widths)).rstrip())
    for r in report.results:
        if r in rows:
            continue
        shown = {k: v for k, v in r.items() if k not in ("provenance", "details")}
        if "failures" in r:
            status = "PASS" if r["passed"] else "FAIL"
            lines.append(f"{r['name']}: {status} ({r['cases']} cases, {r['seconds']}s)")
            if r["failures"]:
                lines.append(f"  first counterexample: {json.dumps(r['failures'][0])}")
            continue
        lines.append(", ".join(f"{k}={_short(v)}" for k, v in shown.items()))
    for name, ok in report.oracle_agreement.items():
        lines.append(f"{name}: {'ok' if ok else 'MISMATCH'}")
    return "\n".join(lines) + "\n"


def render(report, fmt) -> str:
    if fmt == "json":
        return report.to_json() + "\n"
    if fmt == "csv":
        return _csv(report)
    return _text(report)


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "csv", "json"), default="text")
    common.add_argument("--seed", type=int, default=0, help="PRNG seed (default 0)")
    common.add_argument("--exhaustive-cap", type=int, metavar="BITS",
                        help=f"enumeration cap as a power of two (overrides {CAP_ENV})")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for verify suites")

    parser = argparse.ArgumentParser(prog="schur-cyclic",
                                     description="Cyclic codes and their Schur squares.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common], help="build a code and report its bounds")
    _add_code_args(p)
    p.add_argument("--oracle", action="store_true", help="cross-check with the linear-algebra oracles")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("square", parents=[common], help="describe the square of a code")
    _add_code_args(p)
    p.add_argument("--oracle", action="store_true")
    p.set_defaults(func=cmd_square)

    p = sub.add_parser("distance", parents=[common], help="minimum distance of a code and its square")
    _add_code_args(p)
    p.add_argument("--samples", type=int, default=20000, help="random combinations when not exhaustive")
    p.add_argument("--code-only", action="store_true", help="skip the square")
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("table", parents=[common], help="parameter table of a binary family")
    p.add_argument("table", choices=sorted(rw.TABLES))
    p.add_argument("--kmin", type=int)
    p.add_argument("--kmax", type=int, default=12)
    p.add_argument("--rank-oracle", action="store_true", help="recompute dim C^2 by rank")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=SUITES + ("all",))
    p.add_argument("--n", type=int, action="append", help="lengths for theorem1 (repeatable)")
    p.add_argument("--k", type=int, action="append", help="k values for srw (repeatable)")
    p.add_argument("--kmax", type=int, help="largest k for tables / triple")
    p.add_argument("--samples", type=int, default=10**6, help="random pairs per (k, s) in srw")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("graph", parents=[common], help="walk graph, characteristic polynomial, counts")
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--kmax", type=int, default=12)
    p.set_defaults(func=cmd_graph)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    args = parser.parse_args(argv)
    args.argv = argv
    if args.exhaustive_cap is not None:
        os.environ[CAP_ENV] = str(args.exhaustive_cap)
    if getattr(args, "kmin", None) is None and args.command == "table":
        args.kmin = rw.TABLES[args.table][0]
    try:
        report = args.func(args)
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(render(report, args.format))
    if not report.ok:
        for res in report.results:
            if res.get("failures"):
                print(f"FAIL {res['name']}: {json.dumps(res['failures'][0])}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
