"""Command-line front end.

Exit codes: 0 pass, 1 verification failure, 2 usage error, 3 budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Callable, Optional

from . import analytic, bernstein as bern, hc, sl2rep, structurable, tables
from .catalog import UnknownCase, catalog, resolve
from .jordan import verify_axioms

SCHEMA = 1
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class BudgetExceeded(Exception):
    pass


def _json_default(o):
    if isinstance(o, Fraction):
        return str(o)
    if isinstance(o, complex):
        return [o.real, o.imag]
    if isinstance(o, (set, tuple)):
        return list(o)
    raise TypeError(f"not serializable: {type(o).__name__}")


def _emit(payload: dict, args) -> None:
    payload = {"schema": SCHEMA, **payload}
    text = json.dumps(payload, indent=2, default=_json_default, sort_keys=False)
    if getattr(args, "out", None):
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    if args.json or not getattr(args, "out", None):
        print(text)


def _vq(args):
    if not args.case:
        raise UsageError("--case is required")
    try:
        entry = resolve(args.case)
    except UnknownCase:
        raise UsageError(f"unknown case {args.case!r}")
    if not entry.computable:
        raise UsageError(f"{entry.case_id} is metadata only")
    return entry, entry.vq()


# -- commands -------------------------------------------------------------------

def cmd_catalog(args) -> int:
    rows = [e.row() for e in catalog(only_t=args.only_t)]
    if args.json:
        _emit({"catalog": rows}, args)
    else:
        for r in rows:
            flag = "T" if r["property_t"] else "-"
            print(f"{r['case']:<14} {flag}  {r['V']:<16} {r['Q']:<20} {r['k']:<20} {r['g']:<10} {r['g_R']}")
    return EXIT_OK


def cmd_tables(args) -> int:
    out = Path(args.out or "tables")
    paths = tables.write_tables(out)
    for p in paths.values():
        print(p)
    return EXIT_OK


def cmd_bernstein(args) -> int:
    entry, vq = _vq(args)
    ip, pf, agree = bern.bernstein(vq, args.mmax)
    d = ip.to_dict()
    d["method_agreement"] = agree
    d["product_formula"] = pf.to_dict()
    _emit({"case": entry.case_id, "bernstein": d}, args)
    return EXIT_OK if all(agree.values()) else EXIT_FAIL


def cmd_delta(args) -> int:
    entry, vq = _vq(args)
    sol = hc.solve_delta(vq, 6 if args.mmax is None else args.mmax)
    d = sol.to_dict()
    d["expected"] = sol.feasible == vq.has_property_t
    _emit({"case": entry.case_id, "delta": d}, args)
    return EXIT_OK if d["expected"] and (not sol.feasible or sol.closed_form_ok) else EXIT_FAIL


def cmd_sl2(args) -> int:
    entry, vq = _vq(args)
    if not vq.has_property_t:
        raise UsageError(f"{entry.case_id} has no solved delta; sl2 relations need property (T)")
    mmax = 2 if args.mmax is None else args.mmax
    sol = hc.solve_delta(vq, max(mmax + 1, 2))
    r = sl2rep.verify_sl2(vq, sol.deltas, mmax)
    _emit({"case": entry.case_id, "sl2": r}, args)
    return EXIT_OK if r["ok"] else EXIT_FAIL


def cmd_kernel(args) -> int:
    entry, vq = _vq(args)
    x = float(Fraction(args.x))
    try:
        value = analytic.kernel_1f2(vq, x)
    except analytic.ConvergenceError as exc:
        _emit({"case": entry.case_id, "x": x, "error": str(exc), "partial": exc.partial}, args)
        return EXIT_FAIL
    c = analytic.seq_c(vq, 5)
    _emit({"case": entry.case_id, "x": x, "value": value, "c": [str(t) for t in c]}, args)
    return EXIT_OK


def cmd_weight(args) -> int:
    entry, vq = _vq(args)
    if args.report:
        args.out = args.report
    r = analytic.weight_checks(vq, 6 if args.mmax is None else args.mmax)
    ok = all(m["relerr"] <= 1e-6 for m in r["moments"])
    _emit({"case": entry.case_id, "weight": r, "ok": ok}, args)
    return EXIT_OK if ok else EXIT_FAIL


# -- verify ---------------------------------------------------------------------

def _step(name: str, fn: Callable[[], dict], report: dict, deadline: Optional[float]) -> None:
    if deadline is not None and time.time() > deadline:
        raise BudgetExceeded(name)
    t0 = time.time()
    try:
        r = fn()
    except Exception as exc:  # a crashed check is a failed check, with the reason kept
        r = {"ok": False, "error": f"{type(exc).__name__}: {exc}"}
    r["seconds"] = round(time.time() - t0, 3)
    report["steps"][name] = r


def _verify_delta(vq) -> dict:
    sol = hc.solve_delta(vq, 6)
    d = sol.to_dict()
    if vq.has_property_t:
        d["ok"] = sol.feasible and sol.closed_form_ok
        d["status"] = "PASS" if d["ok"] else "FAIL"
    else:
        d["ok"] = not sol.feasible
        d["status"] = "EXPECTED" if d["ok"] else "FAIL"
    return d


def _verify_analytic(vq) -> dict:
    out: dict = {}
    sa = analytic.seq_a(vq, 10)
    out["seq_a_agree"] = sa["agree"]
    out["product_identity"] = all(analytic.product_identity(vq, 10))
    c = analytic.seq_c(vq, 10)
    out["seq_c_recurrence"] = analytic.seq_c_recurrence_ok(vq, c)
    w = analytic.weight_checks(vq)
    out["moment_max_relerr"] = max(m["relerr"] for m in w["moments"])
    out["sign_change"] = w["sign_change"]
    out["asymptotic"] = w["asymptotic"]
    out["asymptotic_within_10pct"] = abs(w["asymptotic"]["ratio"] - 1) <= 0.1
    P = analytic.meijer_params(vq)
    dual = [analytic.meijer_g(P, u) for u in (0.1, 1.0, 10.0, 100.0)]
    out["dual_method_reference"] = dual[0]["reference"]
    out["dual_method_max_relerr"] = max(d["relerr"] for d in dual)
    out["ok"] = (out["seq_a_agree"] and out["product_identity"] and out["seq_c_recurrence"]
                 and out["moment_max_relerr"] <= 1e-6 and out["asymptotic_within_10pct"]
                 and out["dual_method_max_relerr"] <= 1e-6)
    return out


def _verify_kernel(vq, seed: int) -> dict:
    import random

    H = analytic.hermitian_kernel(vq)
    rng = random.Random(seed)
    diag = all(analytic.kernel_diagonal_check(vq, H, vq.random_element(rng)) for _ in range(5))
    zero = H(vq.random_element(rng), [0] * vq.nvars) == 1
    return {"ok": diag and zero, "diagonal": diag, "H(z,0)=1": zero}


def cmd_verify(args) -> int:
    entry, vq = _vq(args)
    seed = args.seed
    deadline = None if args.budget_secs is None else time.time() + args.budget_secs
    small = vq.nvars <= 16
    mmax = args.mmax if args.mmax is not None else (3 if vq.nvars == 1 else 2 if vq.nvars <= 4 else 1)
    report: dict = {"case": entry.case_id, "property_t": vq.has_property_t, "steps": {}}
    steps: list[tuple[str, Callable[[], dict]]] = [
        ("jordan", lambda: verify_axioms(vq, 10, seed)),
        ("bernstein", lambda: _bern_step(vq)),
        ("delta", lambda: _verify_delta(vq)),
    ]
    if vq.has_property_t and small:
        steps.append(("sl2", lambda: sl2rep.verify_sl2(vq, hc.solve_delta(vq, max(mmax + 1, 2)).deltas, mmax)))
    elif vq.has_property_t:
        report["steps"]["sl2"] = {"ok": True, "status": "SKIPPED", "reason": "more than 16 variables", "seconds": 0.0}
    if 2 * vq.nvars <= 32:
        steps.append(("structurable", lambda: _struct_step(vq, seed)))
    if small:
        steps.append(("kernel", lambda: _verify_kernel(vq, seed)))
    if vq.has_property_t:
        steps.append(("analytic", lambda: _verify_analytic(vq)))
    try:
        for name, fn in steps:
            _step(name, fn, report, deadline)
    except BudgetExceeded as exc:
        report["budget_exceeded_at"] = str(exc)
        report["ok"] = False
        _emit(report, args)
        return EXIT_BUDGET
    report["ok"] = all(s.get("ok") for s in report["steps"].values())
    if args.json or args.out:
        _emit(report, args)
    else:
        for name, s in report["steps"].items():
            status = s.get("status") or ("PASS" if s.get("ok") else "FAIL")
            print(f"{name:<13} {status:<9} {s['seconds']:>8.2f}s")
        print("OK" if report["ok"] else "FAILED")
    return EXIT_OK if report["ok"] else EXIT_FAIL


def _bern_step(vq) -> dict:
    ip, pf, agree = bern.bernstein(vq)
    return {"ok": all(agree.values()), "agreement": agree, "roots": [str(r) for r in ip.roots or ()],
            "leading": str(ip.leading), "method": ip.method}


def _struct_step(vq, seed: int) -> dict:
    ident = structurable.verify_structurable_identity(vq, 20, seed)
    anti = structurable.verify_antiautomorphism(vq, 30, seed)
    S = structurable.skew_space(vq)
    return {"ok": ident["ok"] and anti["ok"] and len(S) == 1, "identity": ident, "antiautomorphism": anti,
            "dim_S": len(S)}


# -- parser -----------------------------------------------------------------------

def _nonneg_int(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="minrep", description="Exact checks for minimal representations built from (V, Q).")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, case=True):
        if case:
            sp.add_argument("--case", help="case id, e.g. case1:n=3, case2:p=2, case3:sym4, mixed:2x3")
        sp.add_argument("--mmax", type=_nonneg_int, default=None)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--json", action="store_true")
        sp.add_argument("--out", default=None)
        return sp

    sp = sub.add_parser("catalog", help="list the catalog")
    common(sp, case=False)
    sp.add_argument("--only-t", action="store_true", help="property (T) cases only")
    sp.set_defaults(func=cmd_catalog)

    sp = sub.add_parser("tables", help="write the three CSV tables")
    common(sp, case=False)
    sp.set_defaults(func=cmd_tables)

    sp = common(sub.add_parser("bernstein", help="Bernstein polynomial by both methods"))
    sp.set_defaults(func=cmd_bernstein)

    sp = common(sub.add_parser("delta-solve", help="solve for the delta sequence"))
    sp.set_defaults(func=cmd_delta)

    sp = common(sub.add_parser("sl2-verify", help="check the sl2 relations on graded bases"))
    sp.set_defaults(func=cmd_sl2)

    sp = common(sub.add_parser("kernel", help="evaluate the 1F2 kernel"))
    sp.add_argument("--x", required=True)
    sp.set_defaults(func=cmd_kernel)

    sp = common(sub.add_parser("weight", help="Meijer G weight checks"))
    sp.add_argument("--report", default=None, help="write the JSON report here")
    sp.set_defaults(func=cmd_weight)

    sp = common(sub.add_parser("verify", help="run every check for one case"))
    sp.add_argument("case_pos", nargs="?", metavar="CASE")
    sp.add_argument("--budget-secs", type=float, default=None)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    if getattr(args, "case_pos", None) and not args.case:
        args.case = args.case_pos
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
