"""Command-line front end: factorization tables, Kostant-Kumar polynomials,
good-pair certificates, and the verification suite.

Exit codes: 0 success, 1 I/O failure, 2 premise-failure table rows,
3 property or certificate failure, 64 usage error, 65 non-reduced word,
69 term budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Optional

from .rootsys import (
    NAMED_ORDERS, Root, RootSystem, RootSystemError, SimpleOrder,
    build_e_system, build_from_cartan, named_order, default_order_name,
    first_column,
)
from . import weyl
from .weyl import WeylElt
from .nilhecke import NilHeckeEngine, BudgetExceeded, NilHeckeError
from .analysis import (
    FactorRow, GoodPairCertificate, DividesEvidence, prop35_factor,
    scan_good_pairs, recheck_certificate, AnalysisError,
)
from . import verify as verify_mod

EX_OK = 0
EX_IO = 1
EX_PREMISE = 2
EX_PROPERTY = 3
EX_USAGE = 64
EX_NONREDUCED = 65
EX_BUDGET = 69


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_system(type_tag: str) -> RootSystem:
    if type_tag in ("E6", "E7", "E8"):
        return build_e_system(type_tag)
    if len(type_tag) == 2 and type_tag[0] == "A" and type_tag[1].isdigit():
        n = int(type_tag[1])
        if 1 <= n <= 7:
            cartan = [[2 if i == j else (-1 if abs(i - j) == 1 else 0)
                       for j in range(n)] for i in range(n)]
            return build_from_cartan(cartan)
    raise UsageError(f"unsupported type {type_tag!r} (use A1..A7, E6, E7, E8)")


def resolve_order(rs: RootSystem, type_tag: str, name: Optional[str]) -> SimpleOrder:
    if type_tag in ("E6", "E7", "E8"):
        if name is None:
            name = default_order_name(type_tag)
        try:
            return named_order(type_tag, name)
        except RootSystemError as exc:
            raise UsageError(str(exc)) from None
    if name is not None:
        raise UsageError(f"type {type_tag} has no named orders")
    return SimpleOrder(tuple(range(1, rs.rank + 1)), 1)


def _workers(args) -> int:
    if getattr(args, "workers", None):
        return max(1, args.workers)
    env = os.environ.get("KKWEYL_WORKERS")
    if env and env.isdigit():
        return max(1, int(env))
    return 1


def _frac_str(x) -> str:
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


# -- gen-tables -----------------------------------------------------------------

def row_record(row: FactorRow) -> dict:
    eps = [] if row.beta.eps is None else [_frac_str(x) for x in row.beta.eps]
    return {
        "eps": eps,
        "b": list(row.beta.b),
        "u_word": list(row.u_word),
        "u_len": len(row.u_word),
        "premise_ok": row.premise_ok,
    }


def render_table(rows: list[FactorRow], fmt: str) -> str:
    records = [row_record(r) for r in rows]
    if fmt == "json":
        return json.dumps(records, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["b", "eps", "u_word", "u_len", "premise_ok"])
        for rec in records:
            writer.writerow([
                "".join(str(x) for x in rec["b"]),
                " ".join(rec["eps"]),
                " ".join(str(i) for i in rec["u_word"]),
                rec["u_len"],
                rec["premise_ok"],
            ])
        return buf.getvalue()
    lines = []
    for rec in records:
        b = "".join(str(x) for x in rec["b"])
        word = " ".join(str(i) for i in rec["u_word"])
        flag = "" if rec["premise_ok"] else "   [premise fails]"
        lines.append(f"{b}  l(u)={rec['u_len']:2d}  u = {word}{flag}")
    return "\n".join(lines) + "\n"


def cmd_gen_tables(args) -> int:
    type_tag = args.type
    if type_tag not in ("E6", "E7", "E8"):
        raise UsageError("gen-tables supports types E6, E7, E8")
    names = ([args.order] if args.order
             else sorted(n for t, n in NAMED_ORDERS if t == type_tag))
    rs = build_system(type_tag)
    exit_code = EX_OK
    ext = {"json": "json", "csv": "csv", "text": "txt"}[args.format]
    workers = _workers(args)
    for name in names:
        order = resolve_order(rs, type_tag, name)
        betas = first_column(rs, order)
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                rows = list(pool.map(
                    lambda beta: prop35_factor(rs, order, beta), betas))
        else:
            rows = [prop35_factor(rs, order, beta) for beta in betas]
        if any(not r.premise_ok for r in rows):
            exit_code = EX_PREMISE
        text = render_table(rows, args.format)
        path = os.path.join(args.output_dir, f"table_{type_tag}_{name}.{ext}")
        try:
            with open(path, "w") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EX_IO
        print(f"wrote {path} ({len(rows)} rows)")
    return exit_code


# -- kk -------------------------------------------------------------------------

def parse_word(text: str, rank: int) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        word = tuple(int(tok) for tok in text.split())
    except ValueError:
        raise UsageError(f"word must be whitespace-separated integers: {text!r}")
    for i in word:
        if not 1 <= i <= rank:
            raise UsageError(f"letter {i} out of range 1..{rank}")
    return word


def cmd_kk(args) -> int:
    rs = build_system(args.type)
    word = parse_word(args.word, rs.rank)
    cur = weyl.identity(rs)
    for pos, i in enumerate(word):
        nxt = weyl.multiply(cur, weyl.simple_reflection(rs, i))
        if nxt.length != cur.length + 1:
            prefix = " ".join(str(j) for j in word[:pos + 1])
            print(f"error: word is not reduced at prefix '{prefix}'",
                  file=sys.stderr)
            return EX_NONREDUCED
        cur = nxt
    engine = NilHeckeEngine(rs, term_budget=args.term_budget)
    try:
        result = engine.kk_poly(cur, expand=True)
    except BudgetExceeded as exc:
        print(f"error: term budget exceeded: {exc}", file=sys.stderr)
        return EX_BUDGET
    print(f"w = {' '.join(str(i) for i in word) or 'id'}")
    print(f"l(w) = {cur.length}")
    print(f"c_w = {result.c_w.render()}")
    print(f"d_w = {result.d_w.render()}")
    return EX_OK


# -- good pairs -------------------------------------------------------------------

def cert_to_json(cert: GoodPairCertificate) -> dict:
    out = {
        "w1": list(weyl.reduced_word(cert.w1)),
        "w2": list(weyl.reduced_word(cert.w2)),
        "beta1_b": list(cert.beta1.b),
        "beta2_b": list(cert.beta2.b),
        "side1": cert.side1,
        "side2": cert.side2,
        "computed": cert.computed,
        "direct_inequality": cert.direct_inequality,
    }
    if cert.divides_evidence is not None:
        ev = cert.divides_evidence
        out["divides_evidence"] = {
            "root_b": list(ev.root.b),
            "divides": ev.divides,
            "not_divides": ev.not_divides,
        }
    return out


def cert_from_json(rs: RootSystem, rec: dict) -> GoodPairCertificate:
    ev = None
    if rec.get("divides_evidence"):
        e = rec["divides_evidence"]
        ev = DividesEvidence(rs.root_from_b(e["root_b"]),
                             e["divides"], e["not_divides"])
    return GoodPairCertificate(
        w1=weyl.from_word(rs, tuple(rec["w1"])),
        w2=weyl.from_word(rs, tuple(rec["w2"])),
        beta1=rs.root_from_b(rec["beta1_b"]),
        beta2=rs.root_from_b(rec["beta2_b"]),
        side1=rec["side1"],
        side2=rec["side2"],
        computed=rec["computed"],
        divides_evidence=ev,
        direct_inequality=rec.get("direct_inequality"),
    )


def cmd_good_pairs(args) -> int:
    rs = build_system(args.type)
    order = resolve_order(rs, args.type, args.order)
    engine = NilHeckeEngine(rs, term_budget=args.term_budget)
    if args.recheck:
        try:
            with open(args.recheck) as fh:
                lines = [ln for ln in fh if ln.strip()]
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EX_IO
        bad = 0
        kk_cache = {}
        for n, line in enumerate(lines, 1):
            cert = cert_from_json(rs, json.loads(line))
            try:
                ok = recheck_certificate(cert, rs, order, engine, kk_cache)
            except (AnalysisError, NilHeckeError):
                ok = False
            if not ok:
                bad += 1
                print(f"FAIL line {n}: {line.strip()}", file=sys.stderr)
        print(f"rechecked {len(lines)} certificates, {bad} failures")
        return EX_OK if bad == 0 else EX_PROPERTY
    out = sys.stdout
    fh = None
    if args.output:
        try:
            fh = open(args.output, "w")
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EX_IO
        out = fh
    count = 0
    try:
        for cert in scan_good_pairs(rs, order, args.max_len, engine,
                                    max_compute_len=args.max_compute_len,
                                    certify=not args.no_certify):
            out.write(json.dumps(cert_to_json(cert)) + "\n")
            count += 1
    except AnalysisError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_PROPERTY
    finally:
        if fh is not None:
            fh.close()
    print(f"{count} good pairs", file=sys.stderr)
    return EX_OK


# -- verify -----------------------------------------------------------------------

def cmd_verify(args) -> int:
    rs = build_system(args.type)
    order = resolve_order(rs, args.type, args.order)
    engine = NilHeckeEngine(rs, term_budget=args.term_budget)
    max_len = args.max_len
    if max_len is None:
        max_len = len(rs.positive_roots) if rs.rank <= 3 else 5
    workers = _workers(args)
    checks = [
        lambda: verify_mod.check_product_law(
            engine, max_len, sample=None if rs.rank <= 3 else args.sample),
        lambda: verify_mod.check_recursions(
            engine, max_len, sample=None if rs.rank <= 3 else args.sample),
        lambda: verify_mod.check_support_law(engine, min(max_len, 6)),
        lambda: verify_mod.check_oracle_equivalence(
            engine, min(max_len, engine.brute_cap)),
        lambda: verify_mod.check_dyer_shape(
            engine, max_len, id_only_above=None if rs.rank <= 3 else 5),
        lambda: verify_mod.check_supp_bruhat(rs, order, max_len),
        lambda: verify_mod.check_product_formula(),
    ]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda f: f(), checks))
    else:
        results = [f() for f in checks]
    failed = False
    for res in results:
        status = "PASS" if res.ok else "FAIL"
        print(f"{status} {res.name}: {res.passed} passed, {res.failed} failed")
        if not res.ok:
            failed = True
            print(f"  counterexample: {json.dumps(res.counterexample)}")
    return EX_PROPERTY if failed else EX_OK


# -- entry point ---------------------------------------------------------------

def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kkweyl",
                     description="Exact Kostant-Kumar computations for Weyl groups")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, order=True):
        p.add_argument("--type", required=True,
                       help="root system type (A1..A7, E6, E7, E8)")
        if order:
            p.add_argument("--order", default=None,
                           help="named simple-root order")
        p.add_argument("--term-budget", type=int, default=2_000_000)
        p.add_argument("--workers", type=int, default=None,
                       help="worker count (default: KKWEYL_WORKERS or 1)")

    p = sub.add_parser("gen-tables", help="first-column factorization tables")
    common(p)
    p.add_argument("--format", choices=["json", "csv", "text"], default="json")
    p.add_argument("--output-dir", default=".")
    p.set_defaults(func=cmd_gen_tables)

    p = sub.add_parser("kk", help="c_w and d_w for a reduced word")
    common(p, order=False)
    p.add_argument("--word", default="",
                   help="whitespace-separated simple indices, empty for id")
    p.set_defaults(func=cmd_kk)

    p = sub.add_parser("good-pairs", help="scan and certify good pairs")
    common(p)
    p.add_argument("--max-len", type=int, default=3)
    p.add_argument("--max-compute-len", type=int, default=8)
    p.add_argument("--no-certify", action="store_true")
    p.add_argument("--output", default=None)
    p.add_argument("--recheck", default=None, metavar="FILE",
                   help="re-validate certificates from FILE instead of scanning")
    p.set_defaults(func=cmd_good_pairs)

    p = sub.add_parser("verify", help="run the property suite")
    common(p)
    p.add_argument("--max-len", type=int, default=None)
    p.add_argument("--sample", type=int, default=200)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EX_USAGE
    except BudgetExceeded as exc:
        print(f"error: term budget exceeded: {exc}", file=sys.stderr)
        return EX_BUDGET
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_IO


if __name__ == "__main__":
    sys.exit(main())
