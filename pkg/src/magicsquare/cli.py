"""Command-line interface.

Subcommands: algebra, triality, build, verify, roots, dim, crosscheck, table.
All output is UTF-8 JSON/CSV with rationals serialized as 'n/d'; reports are
byte-identical across runs for fixed flags and seed (timings are opt-in via
--timing since they break reproducibility).  MAGIC_THREADS caps worker
threads for the sampling loops.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Dict, List, Optional

from .compalg import build_split_algebra, parse_tag
from .exact import rat_str
from .magic import MAGIC_DIMS, build_magic_algebra
from .roots import RootDatum, builtin_datum, datum_for, dynkin_type, extract_root_datum
from .triality import triality_algebra
from . import series as S
from .crosscheck import load_known_suspects, run_crosscheck


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("MAGIC_THREADS", "1")))
    except ValueError:
        return 1


def parallel_map(fn, items):
    n = _threads()
    if n <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def _emit(data, out: Optional[str]) -> None:
    text = json.dumps(data, indent=1, sort_keys=True) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- subcommands -------------------------------------------------------------------


def cmd_algebra(args) -> int:
    alg = build_split_algebra(parse_tag(args.A))
    _emit(alg.dump(), args.out)
    return 0


def cmd_triality(args) -> int:
    t = triality_algebra(parse_tag(args.A))
    _emit(t.dump(), args.out)
    return 0


def _jacobi_run(g, mode: str, seed: int) -> Dict:
    if mode == "full":
        checked = g.dim * (g.dim - 1) * (g.dim - 2) // 6
        defects = g.jacobi_exhaustive()
    else:
        count = int(mode.split(":", 1)[1])
        checked = count
        n = _threads()
        if n <= 1:
            defects = g.jacobi_sample(count, seed=seed)
        else:
            chunks = [(count // n + (1 if i < count % n else 0), seed + i)
                      for i in range(n)]
            defects = sum(parallel_map(lambda c: g.jacobi_sample(c[0], seed=c[1]),
                                       chunks))
    return {"mode": mode, "checked": checked, "defects": defects}


def cmd_build(args) -> int:
    t0 = time.time()
    g = build_magic_algebra(args.A, args.B)
    report = {
        "A": args.A.upper(), "B": args.B.upper(),
        "dim": g.dim, "expected_dim": MAGIC_DIMS[(g.a, g.b)],
        "t_dims": [g.dA, g.dB],
        "seed": args.seed,
    }
    ok = g.dim == report["expected_dim"]
    if args.verify:
        if not args.verify.startswith("jacobi="):
            print("build: --verify expects jacobi=full or jacobi=sample:N", file=sys.stderr)
            return 2
        jr = _jacobi_run(g, args.verify.split("=", 1)[1], args.seed)
        report["jacobi_checked"] = jr["checked"]
        report["defects"] = jr["defects"]
        ok = ok and jr["defects"] == 0
    if args.timing:
        report["elapsed_ms"] = int(1000 * (time.time() - t0))
    _emit(report, args.out)
    return 0 if ok else 1


def cmd_verify(args) -> int:
    t0 = time.time()
    g = build_magic_algebra(args.A, args.B)
    rng = random.Random(args.seed)
    report: Dict = {
        "A": args.A.upper(), "B": args.B.upper(), "seed": args.seed,
        "dim": g.dim, "expected_dim": MAGIC_DIMS[(g.a, g.b)],
        "triality_dims": [g.dA, g.dB],
    }
    failures: List[str] = []
    if g.dim != report["expected_dim"]:
        failures.append("dimension")
    jr = _jacobi_run(g, args.jacobi, args.seed)
    report["jacobi"] = jr
    if jr["defects"]:
        failures.append("jacobi")
    # antisymmetry spot check
    tab = g.table()
    anti_bad = 0
    for _ in range(200):
        i, j = rng.randrange(g.dim), rng.randrange(g.dim)
        sv = tab[i].get(j, {})
        back = tab[j].get(i, {})
        if {k: -v for k, v in sv.items()} != back:
            anti_bad += 1
    report["antisymmetry_defects"] = anti_bad
    if anti_bad:
        failures.append("antisymmetry")
    # invariant form: K([z,x],y) + K(x,[z,y]) = 0 on random basis triples
    inv_bad = 0
    for _ in range(100):
        z, x, y = (g.basis_element(rng.randrange(g.dim)) for _ in range(3))
        zx = g.bracket(z, x)
        zy = g.bracket(z, y)
        if g.invariant_form(zx, y) + g.invariant_form(x, zy) != 0:
            inv_bad += 1
    report["invariant_form_defects"] = inv_bad
    if inv_bad:
        failures.append("invariant_form")
    report["h_subalgebras_closed"] = [g.h_subalgebra_closed(i) for i in range(3)]
    if not all(report["h_subalgebras_closed"]):
        failures.append("h_closure")
    if g.dim <= 80 or args.center:
        cd = g.center_dim()
        report["center_dim"] = cd
        if cd != 0:
            failures.append("center")
    report["failures"] = failures
    report["ok"] = not failures
    if args.timing:
        report["elapsed_ms"] = int(1000 * (time.time() - t0))
    _emit(report, args.out)
    return 0 if not failures else 1


def cmd_roots(args) -> int:
    if args.A.upper() == "R" and args.B.upper() == "R":
        rd = datum_for("R", "R")
    else:
        g = build_magic_algebra(args.A, args.B)
        rd = extract_root_datum(g)
    data = rd.to_json()
    data["dynkin_type"] = dynkin_type(rd)
    _emit(data, args.out)
    return 0


def _load_datum(spec: str) -> RootDatum:
    if spec.startswith("builtin:"):
        return builtin_datum(spec.split(":", 1)[1])
    with open(spec) as fh:
        return RootDatum.from_json(json.load(fh))


def cmd_dim(args) -> int:
    if args.datum:
        if not args.weight:
            print("dim: --datum requires --weight", file=sys.stderr)
            return 2
        rd = _load_datum(args.datum)
        labels = [int(x) for x in args.weight.split(",")]
        w = rd.weight_from_fund(labels)
        print(rd.weyl_dim(w))
        return 0
    if not args.series:
        print("dim: need --series or --datum", file=sys.stderr)
        return 2
    a = Fraction(args.a) if args.a is not None else None
    if args.series == "exceptional":
        exps = {"p": args.p, "q": args.q, "r": args.r, "s": args.s}
        res = S.evaluate_series(S.EXCEPTIONAL, exps, a)
    elif args.series == "subexceptional":
        exps = {"p": args.p, "q": args.q, "r": args.r}
        res = S.evaluate_series(S.SUBEXCEPTIONAL, exps, a)
    elif args.series == "severi":
        res = S.severi_dim(args.p, args.pstar, a)
    elif args.series == "thirdrow":
        res = S.thirdrow_dim(args.k, args.r_param, a)
    elif args.series == "so-family":
        res = S.so_family_dim(args.k, args.t)
    else:
        print(f"dim: unknown series {args.series}", file=sys.stderr)
        return 2
    if res.pole:
        print("pole: a denominator linear form vanishes at these parameters")
        return 0
    print(rat_str(res.value))
    if args.factored:
        print(str(res.factored))
        print(f"numerator factors: {res.factored.numerator_count()}, "
              f"denominator factors: {res.factored.denominator_count()}")
    return 0


def cmd_crosscheck(args) -> int:
    suspects = load_known_suspects(args.known_suspect)
    cc = run_crosscheck(args.suite, suspects=suspects)
    report = cc.report()
    _emit(report, args.out)
    return report["summary"]["exit_code"]


def _table_rows(args) -> List[Dict]:
    a_values = [Fraction(x) for x in args.a.split(",")] if args.a else None
    rows = []

    def status_of(res) -> str:
        if res.pole:
            return "pole"
        return "ok" if res.integrality else "nonintegral"

    if args.series == "exceptional":
        avals = a_values or [Fraction(-4, 3), Fraction(-1), Fraction(-2, 3),
                             Fraction(0), Fraction(1), Fraction(2), Fraction(4), Fraction(8)]
        for k in range(args.k_min, args.k_max + 1):
            for a in avals:
                try:
                    v = S.adjoint_cartan_power(k, a)
                    rows.append({"k": k, "a": rat_str(a), "value": rat_str(v),
                                 "status": "ok" if v.denominator == 1 and v > 0 else "nonintegral"})
                except ZeroDivisionError:
                    rows.append({"k": k, "a": rat_str(a), "value": "pole", "status": "pole"})
    elif args.series == "subexceptional":
        avals = a_values or [Fraction(x) for x in (1, 2, 4, 8)]
        for k in range(args.k_min, args.k_max + 1):
            for a in avals:
                res = S.subexc_series(args.which or "g", k, a)
                rows.append({"k": k, "a": rat_str(a),
                             "value": "pole" if res.pole else rat_str(res.value),
                             "status": status_of(res)})
    elif args.series == "severi":
        avals = a_values or [Fraction(x) for x in (1, 2, 4, 8)]
        for p in range(args.k_min, args.k_max + 1):
            for ps in range(args.k_min, args.k_max + 1):
                for a in avals:
                    res = S.severi_dim(p, ps, a)
                    rows.append({"p": p, "pstar": ps, "a": rat_str(a),
                                 "value": "pole" if res.pole else rat_str(res.value),
                                 "status": status_of(res)})
    elif args.series == "qdim":
        avals = a_values or [Fraction(x) for x in (0, 2, 4, 8)]
        for k in range(args.k_min, args.k_max + 1):
            for a in avals:
                qp = S.qdim_adjoint_cartan_power(k, int(a))
                rows.append({"k": k, "a": rat_str(a), "value": str(qp),
                             "status": "ok" if qp.has_nonneg_coeffs() else "suspect"})
    elif args.series == "degrees":
        avals = a_values or [Fraction(x) for x in (2, 4, 8)]
        for variety in ("ad", "fplanes", "flines", "fpoints"):
            for a in avals:
                v = S.degree_from_hilbert(variety, a)
                rows.append({"variety": variety, "a": rat_str(a),
                             "value": rat_str(v),
                             "status": "ok" if v.denominator == 1 and v > 0 else "nonintegral"})
    elif args.series == "so-family":
        for k in range(args.k_min, args.k_max + 1):
            for t in range(1, 7):
                res = S.so_family_dim(k, t)
                rows.append({"k": k, "t": t, "value": rat_str(res.value),
                             "status": status_of(res)})
    else:
        raise ValueError(f"unknown table series {args.series}")
    return rows


def cmd_table(args) -> int:
    try:
        rows = _table_rows(args)
    except ValueError as exc:
        print(f"table: {exc}", file=sys.stderr)
        return 2
    if not rows:
        print("table: empty parameter range", file=sys.stderr)
        return 2
    cols = list(rows[0].keys())
    if args.format == "json":
        text = json.dumps(rows, indent=1, sort_keys=True) + "\n"
    elif args.format == "md":
        lines = ["| " + " | ".join(cols) + " |",
                 "|" + "|".join("---" for _ in cols) + "|"]
        lines += ["| " + " | ".join(str(r[c]) for c in cols) + " |" for r in rows]
        text = "\n".join(lines) + "\n"
    else:
        lines = [",".join(cols)]
        lines += [",".join(f'"{r[c]}"' if "," in str(r[c]) else str(r[c]) for c in cols)
                  for r in rows]
        text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


# -- parser -------------------------------------------------------------------------


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="magicsquare",
                                 description="Exact magic-square Lie algebra "
                                             "constructions and dimension formulas")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("algebra", help="dump a split composition algebra")
    p.add_argument("action", choices=["dump"])
    p.add_argument("--A", required=True)
    p.add_argument("--format", choices=["json"], default="json")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_algebra)

    p = sub.add_parser("triality", help="dump a triality Lie algebra basis")
    p.add_argument("action", choices=["basis"])
    p.add_argument("--A", required=True)
    p.add_argument("--format", choices=["json"], default="json")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_triality)

    p = sub.add_parser("build", help="construct g(A,B) and report")
    p.add_argument("--A", required=True)
    p.add_argument("--B", required=True)
    p.add_argument("--verify", help="jacobi=full or jacobi=sample:N")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--timing", action="store_true")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_build)

    p = sub.add_parser("verify", help="construction and invariant suite")
    p.add_argument("--A", required=True)
    p.add_argument("--B", required=True)
    p.add_argument("--jacobi", default="full", help="full or sample:N")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--center", action="store_true", help="force the center check")
    p.add_argument("--timing", action="store_true")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("roots", help="extract and dump a root datum")
    p.add_argument("--A", required=True)
    p.add_argument("--B", required=True)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_roots)

    p = sub.add_parser("dim", help="dimension queries (series or Weyl)")
    p.add_argument("--series",
                   choices=["exceptional", "subexceptional", "severi",
                            "thirdrow", "so-family"])
    p.add_argument("-p", type=int, default=0)
    p.add_argument("-q", type=int, default=0)
    p.add_argument("-r", type=int, default=0)
    p.add_argument("-s", type=int, default=0)
    p.add_argument("--pstar", type=int, default=0)
    p.add_argument("-k", type=int, default=1)
    p.add_argument("-t", type=int, default=1)
    p.add_argument("--r-param", type=int, default=3, help="row parameter for thirdrow")
    p.add_argument("-a")
    p.add_argument("--factored", action="store_true")
    p.add_argument("--datum", help="builtin:<name> or a root-datum JSON file")
    p.add_argument("--weight", help="comma-separated fundamental-weight labels")
    p.set_defaults(fn=cmd_dim)

    p = sub.add_parser("crosscheck", help="run the formula-vs-oracle harness")
    p.add_argument("--suite", choices=["quick", "full"], default="quick")
    p.add_argument("--known-suspect", help="path to a known-suspect JSON list")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_crosscheck)

    p = sub.add_parser("table", help="generate series tables")
    p.add_argument("--series", required=True,
                   choices=["exceptional", "subexceptional", "severi", "qdim",
                            "degrees", "so-family"])
    p.add_argument("--which", choices=["g", "V", "V2"])
    p.add_argument("--k-min", type=int, default=1)
    p.add_argument("--k-max", type=int, default=4)
    p.add_argument("--a", help="comma-separated parameter values")
    p.add_argument("--format", choices=["csv", "json", "md"], default="csv")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_table)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, OSError) as exc:
        print(f"magicsquare: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
