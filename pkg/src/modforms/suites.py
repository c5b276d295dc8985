"""Named verification suites shared by the CLI and the test-suite.

Each suite returns a list of :class:`~modforms.numeric.CheckResult` in a fixed
order.  ``identities`` is exact arithmetic, ``numeric`` runs the
high-precision layer and ``oracles`` compares against independent brute-force
or quadrature computations.
"""

from __future__ import annotations

from fractions import Fraction

from .numeric import CheckResult, EvalContext

__all__ = ["SUITES", "run_suite", "identities", "numeric_checks", "oracles"]


def _exact(name, expected, computed) -> CheckResult:
    ok = expected == computed
    return CheckResult(name, str(expected), str(computed), "0" if ok else "nonzero", "0", ok)


def _flag(name, ok: bool, detail="") -> CheckResult:
    return CheckResult(name, "true", str(bool(ok)).lower() + (f" ({detail})" if detail else ""),
                       "0" if ok else "1", "0", bool(ok))


def identities() -> list[CheckResult]:
    from . import arith, dims, forms, hecke, qexp, tau
    from .linalg import poly_str

    P = 300
    e = {k: forms.eisenstein_E(k, P).series for k in (4, 6, 8, 10, 12)}
    e2 = forms.eisenstein_E2(P).series
    d = forms.delta(P).series
    out = [
        _flag("E4^2 = E8", e[4] * e[4] == e[8]),
        _flag("E4*E6 = E10", e[4] * e[6] == e[10]),
        _flag("691 E12 = 441 E4^3 + 250 E6^2",
              e[12].scale(691) == e[4] ** 3 * 441 + (e[6] ** 2).scale(250)),
        _flag("1728 Delta = E4^3 - E6^2", d.scale(1728) == e[4] ** 3 - e[6] ** 2),
        _flag("q dDelta/dq = E2 Delta", d.qderive().agrees(e2 * d)),
        _exact("eta head", [1, -1, -1, 0, 0, 1, 0, 1],
               [int(c) for c in qexp.pentagonal_eta(8).coeffs]),
        _exact("tau(1..6)", [1, -24, 252, -1472, 4830, -6048], tau.tau_table(6).as_list()),
        _exact("tau(p) by class numbers, p = 3, 5, 7", [252, 4830, -16744],
               [tau.tau_trace_formula(p) for p in (3, 5, 7)]),
        _flag("tau congruences mod 5 and 7, n <= 500", tau.tau_congruence_check(500)),
        _flag("sigma_7 convolution, n <= 200", forms.sigma7_identity_check(200)),
        _flag("triple product (8, 40)", qexp.triple_product_check(8, 40)),
        _flag("partition identity, 200 terms", qexp.partition_identity_check(200)),
        _exact("dim M_2(Gamma0(4))", 2, dims.dim_gamma0(4, 2, "full")),
        _exact("dim S_2(Gamma0(11))", 1, dims.dim_gamma0(11, 2, "cusp")),
        _exact("dim S_2^new(Gamma0(22))", 0, dims.dim_new(22, 2)),
        _exact("charpoly T(2) on S_24", "x^2 - 1080*x - 20468736",
               poly_str(hecke.hecke_matrix(24, 2).charpoly())),
        _exact("T(2)(j)", [Fraction(1, 2), -744, 81000], hecke.tn_on_j(2)),
        _exact("T(3)(j)", [Fraction(1, 3), -744, 356652, -12288000], hecke.tn_on_j(3)),
        _exact("zeta_K(-1), K = Q(sqrt 5)", Fraction(1, 30), arith.zeta_k_special(5, 1)),
        _exact("zeta_K(-3), K = Q(sqrt 5)", Fraction(1, 60), arith.zeta_k_special(5, 3)),
        _flag("Serre derivative of Delta vanishes",
              forms.serre_derivative(forms.delta(P)).series.is_zero()),
    ]
    return out


def numeric_checks(ctx: EvalContext | None = None) -> list[CheckResult]:
    from . import numeric as nm
    from .forms import delta

    ctx = ctx or EvalContext()
    mp = ctx.mp
    D = delta(80)
    tol20 = mp.mpf(10) ** -20
    tol12 = mp.mpf(10) ** -12
    res = []

    def add(name, residual, tol):
        res.append(nm._result(ctx, name, "0", residual, residual, tol))

    for s in range(1, 12):
        add(f"Lambda(Delta, {12 - s}) - Lambda(Delta, {s})", nm.lambda_fe_residual(D, 12, s, ctx), tol12)
    res.extend(nm.manin_ratios(ctx, raise_on_mismatch=False)["checks"])
    res.extend(nm.lambert_identity_report(ctx))
    for N in (6, 10, 15):
        add(f"Fricke sum N={N}", nm.fricke_sum_check(N, ctx), mp.mpf(10) ** -25)
    add("T(1/a) = sqrt(a) T(a), a = 0.37", nm.theta_fe_residual(mp.mpf("0.37"), ctx), mp.mpf(10) ** -30)
    add("T2(1/a) = a T2(a), a = 1.3", nm.cosh_fe_residual(mp.mpf("1.3"), ctx), mp.mpf(10) ** -30)
    add("T2(a) = T(a)^2, a = 1.3", nm.cosh_square_residual(mp.mpf("1.3"), ctx), mp.mpf(10) ** -30)
    for tau in ("1i", "0.3+1.7i"):
        add(f"E2 law at {tau}", nm.quasi_modularity_residual(tau, ctx), tol20)
    add("E2* covariance at 2i", nm.e2star_residual("2i", ctx), tol20)
    add("eta inversion at 0.1+0.8i", nm.eta_inversion_residual("0.1+0.8i", ctx), tol20)
    add("theta inversion at 0.2+0.6i", nm.theta_inversion_residual("0.2+0.6i", ctx), tol20)
    add("Delta inversion at 0.1+1.3i", nm.delta_inversion_residual("0.1+1.3i", ctx), tol20)
    add("theta^2 twist (1 0; 4 1) at i/3",
        nm.theta_sq_twist_residual(((1, 0), (4, 1)), mp.mpc(0, mp.mpf(1) / 3), ctx), tol20)
    add("theta^2 twist (3 -1; 4 -1) at 0.1+0.9i",
        nm.theta_sq_twist_residual(((3, -1), (4, -1)), "0.1+0.9i", ctx), tol20)
    add("F4** law at 0.2+1.1i", nm.f4star_residual("0.2+1.1i", ctx), tol20)
    add("F4* law at 1.5i", nm.f4star_first_residual("1.5i", ctx), tol20)
    return res


def oracles(ctx: EvalContext | None = None) -> list[CheckResult]:
    from . import arith, numeric as nm, tau
    from .forms import delta, rk_bruteforce, rk_formula

    ctx = ctx or EvalContext()
    mp = ctx.mp
    res = []
    ok = all(rk_formula(k, n) == rk_bruteforce(k, n) for k in (2, 4, 6, 8) for n in range(201))
    res.append(_flag("r_k formulas vs lattice counts, k in {2,4,6,8}, n <= 200", ok))
    fund = [D for D in range(2, 101) if arith.is_fundamental_discriminant(D)]
    ok = all(arith.r5_via_zeta(D) == rk_bruteforce(5, D) for D in fund)
    res.append(_flag("r_5(D) via zeta_K(-1) vs lattice counts, D <= 100", ok))
    ref = tau.tau_table(2000).values
    for m in tau.METHODS[1:]:
        res.append(_flag(f"tau {m} vs series, n <= 2000", tau.tau_table(2000, m).values == ref))
    D = delta(80)
    worst = max(abs(nm.lambda_level1(D, 12, s, ctx) - nm.lambda_quadrature(D, 12, s, ctx))
                for s in (1, 4, 6, 9, 11))
    res.append(nm._result(ctx, "Lambda(Delta, s) series vs quadrature", "0", worst, worst,
                          mp.mpf(10) ** -12))
    quad = mp.mpf(nm.petersson_delta_quadrature())
    per = nm.petersson_delta(ctx)
    rel = abs(per - quad) / quad
    res.append(nm._result(ctx, "<Delta, Delta> periods vs fundamental-domain integral", quad,
                          per, rel, mp.mpf("5e-4")))
    return res


SUITES = {"identities": identities, "numeric": numeric_checks, "oracles": oracles}


def run_suite(name: str, ctx: EvalContext | None = None) -> list[CheckResult]:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}")
    fn = SUITES[name]
    return fn() if name == "identities" else fn(ctx)
