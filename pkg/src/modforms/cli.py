"""Command-line interface: ``python -m modforms <command> ...``.

Exit status is 0 on success, 1 for usage errors, 2 for domain errors and 3
when a verification suite reports a failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from .errors import FormSyntaxError, ModFormsError, UnknownAtom

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_VERIFY = 0, 1, 2, 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


def _default_prec() -> int:
    raw = os.environ.get("MODFORMS_PREC")
    return int(raw) if raw and raw.isdigit() else 38


def _q(x) -> str:
    return str(Fraction(x))


def _emit(args, payload: dict, plain: str):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(plain)


def _ctx(args):
    from .numeric import EvalContext
    prec = args.prec
    if prec is None:
        prec = max(_default_prec(), 50) if args.command == "cm" else _default_prec()
    return EvalContext(prec)


def _named(expr_text, terms):
    from .expr import evaluate, infer, parse_form_expr, unparse
    from .forms import FormDesc, NamedForm

    tree = parse_form_expr(expr_text)
    typed = infer(tree)
    series = evaluate(tree, terms)
    w2 = int(2 * typed.weight) if typed.weight is not None else 0
    desc = FormDesc(w2, typed.level or 1, 0, series.offset > 0, typed.quasimodular)
    return NamedForm(desc, series, unparse(tree)), typed


# ---------------------------------------------------------------- commands

def cmd_coeffs(args):
    from .expr import evaluate, infer, parse_form_expr, unparse
    tree = parse_form_expr(args.expr)
    s = evaluate(tree, args.terms)
    t = infer(tree)
    coeffs = [_q(c) for c in s.coeffs]
    payload = {"expr": unparse(tree), "offset": _q(s.offset), "coefficients": coeffs,
               "weight": None if t.weight is None else _q(t.weight),
               "level": t.level}
    _emit(args, payload, f"q^{_q(s.offset)}: " + ", ".join(coeffs))


def cmd_dim(args):
    from .dims import dim_gamma0, dim_new
    if args.space == "new":
        d = dim_new(args.level, args.weight)
    else:
        d = dim_gamma0(args.level, args.weight, args.space)
    _emit(args, {"level": args.level, "weight": args.weight, "space": args.space, "dim": d}, str(d))


def cmd_tau(args):
    from .tau import tau, tau_table
    if args.n is not None:
        v = tau(args.n)
        _emit(args, {"n": args.n, "tau": v}, str(v))
        return
    t = tau_table(args.upto, args.method)
    if args.json:
        print(t.to_json())
    else:
        sys.stdout.write(t.to_tsv())


def cmd_hecke(args):
    from . import hecke
    from .linalg import poly_str
    if args.on_j is not None:
        c = hecke.tn_on_j(args.on_j, normalized=args.normalized)
        var = "J" if args.normalized else "j"
        _emit(args, {"n": args.on_j, "coefficients": [_q(x) for x in c]}, poly_str(c, var))
        return
    if args.weight is None:
        raise _UsageError("hecke: --weight is required with --matrix or --eigen")
    if args.eigen:
        forms = hecke.eigenforms(args.weight, args.n)
        rows = []
        for f in forms:
            row = {"eigenvalue": str(f.eigenvalue)}
            if f.exact:
                row["coefficients"] = [str(f.coefficient(m)) for m in range(1, args.terms + 1)]
            rows.append(row)
        plain = "\n".join(r["eigenvalue"] + (": " + ", ".join(r["coefficients"]) if "coefficients" in r else "")
                          for r in rows)
        _emit(args, {"weight": args.weight, "n": args.n, "eigenforms": rows}, plain)
        return
    M = hecke.hecke_matrix(args.weight, args.n)
    rows = [[_q(x) for x in r] for r in M.tolist()]
    plain = "\n".join(" ".join(r) for r in rows) + "\ncharpoly: " + poly_str(M.charpoly())
    _emit(args, {"weight": args.weight, "n": args.n, "matrix": rows,
                 "charpoly": [_q(x) for x in M.charpoly()]}, plain)


def cmd_lvalue(args):
    from . import numeric as nm
    from .hecke import fricke_sign
    ctx = _ctx(args)
    f, typed = _named(args.expr, args.terms)
    if typed.weight is None or typed.weight.denominator != 1:
        raise ModFormsError("L-values need an integral weight")
    k = int(typed.weight)
    N = args.level or typed.level or 1
    if args.epsilon == "auto":
        eps = 1 if N == 1 else fricke_sign(f, N=N)
    else:
        eps = int(args.epsilon)
    svals = range(1, k) if args.s is None else [args.s]
    rows = []
    for s in svals:
        lam = nm.lambda_levelN(f, k, N, eps, s, ctx)
        L = lam * (2 * ctx.mp.pi) ** s / ctx.mp.gamma(s) / ctx.mp.power(N, ctx.mpf(s) / 2)
        rows.append({"s": s, "Lambda": ctx.fmt(lam), "L": ctx.fmt(L)})
    plain = "\n".join(f"s={r['s']}: Lambda={r['Lambda']} L={r['L']}" for r in rows)
    _emit(args, {"expr": f.name, "weight": k, "level": N, "epsilon": eps, "values": rows}, plain)


def cmd_eval(args):
    from .numeric import eval_form
    ctx = _ctx(args)
    f, _ = _named(args.expr, args.terms)
    v = eval_form(f, args.tau, ctx)
    re_s, im_s = ctx.fmt(v.real), ctx.fmt(v.imag)
    _emit(args, {"expr": f.name, "tau": args.tau, "re": re_s, "im": im_s}, f"{re_s} {im_s}")


def cmd_cm(args):
    from .numeric import cm_j, cm_j_report
    ctx = _ctx(args)
    if args.point:
        v = cm_j(args.point, ctx)
        _emit(args, {"point": args.point, "j": ctx.fmt(v.real), "im": ctx.fmt(v.imag)},
              ctx.fmt(v.real))
        return
    rep = cm_j_report(ctx)
    if args.json:
        print(json.dumps([c.to_json_obj() for c in rep]))
    else:
        for c in rep:
            print(f"{c.check} = {c.computed} (expected {c.expected}) {'ok' if c.passed else 'FAIL'}")
    return EXIT_OK if all(c.passed for c in rep) else EXIT_VERIFY


def cmd_rk(args):
    from .forms import rk_bruteforce, rk_formula
    v = rk_formula(args.k, args.n)
    payload = {"k": args.k, "n": args.n, "r": v}
    if args.brute:
        payload["brute_force"] = rk_bruteforce(args.k, args.n)
    _emit(args, payload, str(v) + (f" (brute force {payload['brute_force']})" if args.brute else ""))
    if args.brute and payload["brute_force"] != v:
        return EXIT_VERIFY


def cmd_zetak(args):
    from .arith import zeta_k_special
    a, b = zeta_k_special(args.disc, 1), zeta_k_special(args.disc, 3)
    _emit(args, {"disc": args.disc, "zeta(-1)": _q(a), "zeta(-3)": _q(b)},
          f"zeta_K(-1) = {_q(a)}\nzeta_K(-3) = {_q(b)}")


def cmd_check(args):
    from .suites import run_suite
    res = run_suite(args.suite, _ctx(args))
    if args.json:
        print(json.dumps([c.to_json_obj() for c in res], indent=1))
    else:
        for c in res:
            print(f"{'PASS' if c.passed else 'FAIL'}  {c.check}  (residual {c.residual}, tol {c.tolerance})")
    return EXIT_OK if all(c.passed for c in res) else EXIT_VERIFY


def cmd_bench(args):
    from .tau import METHODS, tau_table
    ref = None
    rows = []
    for m in METHODS:
        t0 = time.perf_counter()
        t = tau_table(args.upto, m)
        dt = time.perf_counter() - t0
        ref = ref or t.values
        rows.append({"method": m, "seconds": round(dt, 3), "agrees": t.values == ref})
    if args.json:
        print(json.dumps(rows))
    else:
        for r in rows:
            print(f"{r['method']:<11} {r['seconds']:8.3f}s  {'agrees' if r['agrees'] else 'DIFFERS'}")
    return EXIT_OK if all(r["agrees"] for r in rows) else EXIT_VERIFY


# ------------------------------------------------------------------ parser

def build_parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--prec", type=int, default=None,
                        help="decimal digits (default 38, or $MODFORMS_PREC; cm uses at least 50)")

    p = _Parser(prog="modforms", description="Exact and numerical tools for modular forms.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("coeffs", parents=[common], help="q-expansion of a form expression")
    c.add_argument("expr")
    c.add_argument("--terms", type=int, default=10)
    c.set_defaults(func=cmd_coeffs)

    c = sub.add_parser("dim", parents=[common], help="dimension of M_k or S_k on Gamma0(N)")
    c.add_argument("--level", type=int, default=1)
    c.add_argument("--weight", type=int, required=True)
    c.add_argument("--space", choices=("full", "cusp", "new"), default="full")
    c.set_defaults(func=cmd_dim)

    c = sub.add_parser("tau", parents=[common], help="Ramanujan tau values")
    g = c.add_mutually_exclusive_group(required=True)
    g.add_argument("--upto", type=int)
    g.add_argument("--n", type=int)
    c.add_argument("--method", default="series",
                   choices=("series", "recursion", "pentagonal", "jacobi", "sigma", "hybrid"))
    c.set_defaults(func=cmd_tau)

    c = sub.add_parser("hecke", parents=[common], help="Hecke matrices, eigenforms, T(n) on j")
    g = c.add_mutually_exclusive_group(required=True)
    g.add_argument("--matrix", action="store_true")
    g.add_argument("--eigen", action="store_true")
    g.add_argument("--on-j", type=int, metavar="N")
    c.add_argument("--weight", type=int)
    c.add_argument("--n", type=int, default=2)
    c.add_argument("--terms", type=int, default=5)
    c.add_argument("--normalized", action="store_true", help="act on J = j - 744")
    c.set_defaults(func=cmd_hecke)

    c = sub.add_parser("lvalue", parents=[common], help="completed L-values at integer points")
    c.add_argument("expr", nargs="?", default="Delta")
    c.add_argument("--s", type=int)
    c.add_argument("--level", type=int)
    c.add_argument("--epsilon", choices=("auto", "1", "-1"), default="auto")
    c.add_argument("--terms", type=int, default=400)
    c.set_defaults(func=cmd_lvalue)

    c = sub.add_parser("eval", parents=[common], help="evaluate a form at a point of H")
    c.add_argument("expr")
    c.add_argument("--tau", required=True, help='e.g. "0.1+1.2i"')
    c.add_argument("--terms", type=int, default=400)
    c.set_defaults(func=cmd_eval)

    c = sub.add_parser("cm", parents=[common], help="j at CM points")
    c.add_argument("--point", help='e.g. "i", "(1+i*sqrt(163))/2"; omit for the full table')
    c.set_defaults(func=cmd_cm)

    c = sub.add_parser("rk", parents=[common], help="representations as sums of k squares")
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--brute", action="store_true", help="also count lattice points")
    c.set_defaults(func=cmd_rk)

    c = sub.add_parser("zetak", parents=[common], help="zeta_K(-1), zeta_K(-3) for real quadratic K")
    c.add_argument("--disc", type=int, required=True)
    c.set_defaults(func=cmd_zetak)

    c = sub.add_parser("check", parents=[common], help="run a verification suite")
    c.add_argument("--suite", choices=("identities", "numeric", "oracles"), default="identities")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("bench", parents=[common], help="time the tau algorithms")
    c.add_argument("--upto", type=int, default=5000)
    c.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        rc = args.func(args)
        return EXIT_OK if rc is None else rc
    except _UsageError as e:
        print(e, file=sys.stderr)
        return EXIT_USAGE
    except (FormSyntaxError, UnknownAtom) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ModFormsError, ValueError, ZeroDivisionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
