"""Named modular forms and exact identities between their q-expansions."""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from fractions import Fraction
from math import isqrt, lcm

from . import dims
from .arith import bernoulli, sigma, sigma_list, sigma_twisted, sigma_twisted_star
from .errors import BadInput, BadK, BadWeight, NotInSpan
from .linalg import solve_columns
from .qexp import QExp, eta_quotient, half_shift, pentagonal_eta

__all__ = [
    "FormDesc", "NamedForm", "eisenstein_E", "eisenstein_E2", "delta", "jfunction", "theta",
    "theta_power", "eta_form", "mk_basis", "sk_basis", "to_basis", "eisenstein_poly_in_e4e6",
    "evaluate_e4e6_poly", "sigma7_identity_check", "serre_derivative", "rc_bracket1",
    "rc_bracket2", "tau_sigma_formula_components", "siegel_coeffs", "siegel_relation_check",
    "weight2_level_eisenstein", "gamma04_eisenstein", "rk_formula", "rk_bruteforce",
    "theta4_decomposition_check", "eta_theta_relation_check", "spherical_theta_f5",
    "laplacian", "F5_POLY",
]


@dataclass(frozen=True)
class FormDesc:
    weight2: int
    level: int = 1
    character: int = 0
    cuspidal: bool = False
    quasimodular: bool = False

    @property
    def weight(self) -> Fraction:
        return Fraction(self.weight2, 2)


@dataclass(frozen=True)
class NamedForm:
    desc: FormDesc
    series: QExp
    name: str = ""

    @property
    def weight(self) -> Fraction:
        return self.desc.weight

    @property
    def level(self) -> int:
        return self.desc.level

    def coefficient(self, e):
        return self.series.coefficient(e)

    def to_json_obj(self) -> dict:
        d = self.desc
        return {"name": self.name, "weight2": d.weight2, "level": d.level,
                "character": d.character, "cuspidal": d.cuspidal,
                "series": self.series.to_json_obj()}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json(cls, text) -> "NamedForm":
        o = json.loads(text)
        desc = FormDesc(o["weight2"], o["level"], o["character"], o["cuspidal"])
        return cls(desc, QExp.from_json_obj(o["series"]), o["name"])


def _series(f):
    return f.series if isinstance(f, NamedForm) else f


def _from_zero(series: QExp, prec: int) -> QExp:
    """Re-express an integer-offset series on exponents ``0 .. prec-1``."""
    return QExp.constant(0, prec) + series


# ------------------------------------------------------------ Eisenstein

def _eisenstein_series(k: int, prec: int) -> QExp:
    c = Fraction(-2 * k) / bernoulli(k)
    sig = sigma_list(k - 1, prec - 1)
    return QExp([1] + [c * s for s in sig[1:]], 0, prec)


def eisenstein_E(k: int, prec: int) -> NamedForm:
    """Normalised ``E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n``."""
    if not isinstance(k, int) or k < 4 or k % 2:
        raise BadWeight(f"E_k needs even k >= 4, got {k!r}")
    return NamedForm(FormDesc(2 * k), _eisenstein_series(k, prec), f"E{k}")


def eisenstein_E2(prec: int) -> NamedForm:
    return NamedForm(FormDesc(4, quasimodular=True), _eisenstein_series(2, prec), "E2")


def _e(k, prec):
    if k == 0:
        return QExp.constant(1, prec)
    return _eisenstein_series(k, prec)


def delta(prec: int, method: str = "eta24") -> NamedForm:
    """``Delta`` with ``prec`` coefficients (exponents ``0 .. prec-1``)."""
    if prec < 2:
        raise ValueError("prec must be at least 2")
    if method == "eta24":
        s = _from_zero(eta_quotient([(1, 24)], prec - 1), prec)
    elif method == "e4e6":
        e4, e6 = _e(4, prec), _e(6, prec)
        s = (e4 ** 3 - e6 ** 2).scale(Fraction(1, 1728))
    elif method == "recursion":
        # (n-1) tau(n) = -24 sum_{m<n} sigma_1(m) tau(n-m)
        sig = sigma_list(1, prec)
        t = [0, 1] + [0] * (prec - 2)
        for n in range(2, prec):
            acc = sum(sig[m] * t[n - m] for m in range(1, n))
            t[n] = -24 * acc // (n - 1)
        s = QExp.from_ints(t)
    else:
        raise ValueError(f"unknown method {method!r}")
    return NamedForm(FormDesc(24, cuspidal=True), s, "Delta")


def jfunction(prec: int) -> NamedForm:
    """``j = E_4^3/Delta`` with ``prec`` coefficients starting at ``q^-1``."""
    if prec < 2:
        raise ValueError("prec must be at least 2")
    d = eta_quotient([(1, 24)], prec)
    s = _e(4, prec) ** 3 * d.inv()
    return NamedForm(FormDesc(0), s, "j")


# ----------------------------------------------------------------- theta

def theta(prec: int) -> NamedForm:
    c = [0] * prec
    n = 0
    while n * n < prec:
        c[n * n] = 1 if n == 0 else 2
        n += 1
    return NamedForm(FormDesc(1, 4), QExp.from_ints(c), "theta")


def theta_power(m: int, prec: int) -> NamedForm:
    if m < 1:
        raise ValueError("m must be positive")
    s = theta(prec).series ** m
    char = -4 if m % 4 == 2 else 0
    return NamedForm(FormDesc(m, 4, char), s, f"theta^{m}")


def eta_form(factors, prec: int, name: str | None = None) -> NamedForm:
    """The eta quotient ``prod eta(m tau)^r`` as a named form."""
    factors = list(factors)
    level = lcm(*(m for m, _ in factors))
    w2 = sum(r for _, r in factors)
    s = eta_quotient(factors, prec)
    cusp = s.offset > 0
    if name is None:
        name = "*".join(f"eta({m})^{r}" for m, r in factors)
    return NamedForm(FormDesc(w2, level, 0, cusp), s, name)


# ---------------------------------------------------------------- bases

def mk_basis(k: int, prec: int) -> list[NamedForm]:
    """Monomials ``E4^a E6^b`` with ``4a + 6b = k``, ``a`` descending."""
    if not isinstance(k, int) or k < 0 or k % 2:
        raise BadWeight(f"weight must be even and >= 0, got {k!r}")
    out = []
    e4 = e6 = None
    for a in range(k // 4, -1, -1):
        rest = k - 4 * a
        if rest % 6:
            continue
        b = rest // 6
        if e4 is None:
            e4, e6 = _e(4, prec), _e(6, prec)
        s = QExp.constant(1, prec)
        if a:
            s = s * e4 ** a
        if b:
            s = s * e6 ** b
        out.append(NamedForm(FormDesc(2 * k), s, f"E4^{a}*E6^{b}"))
    return out


def sk_basis(k: int, prec: int) -> list[NamedForm]:
    if not isinstance(k, int) or k < 0 or k % 2:
        raise BadWeight(f"weight must be even and >= 0, got {k!r}")
    if k < 12:
        return []
    d = delta(prec).series
    return [NamedForm(FormDesc(2 * k, cuspidal=True), d * b.series, f"Delta*{b.name}")
            for b in mk_basis(k - 12, prec)]


def _aligned(series_list):
    base = min(s.offset for s in series_list)
    end = min(s.bound for s in series_list)
    p = int(end - base)
    out = []
    for s in series_list:
        shift = s.offset - base
        if shift.denominator != 1:
            raise NotInSpan("series live on incompatible exponent grids")
        shift = int(shift)
        c = list(s.coeffs)
        v = [Fraction(0)] * shift + c
        out.append((v + [Fraction(0)] * p)[:p])
    return out


def to_basis(f, basis) -> list[Fraction]:
    """Coordinates of ``f`` in ``basis`` using every commonly known coefficient."""
    from .errors import InsufficientPrecision
    series = [_series(b) for b in basis]
    target = _series(f)
    if not series:
        if target.is_zero():
            return []
        raise NotInSpan("nonzero form and empty basis")
    vecs = _aligned(series + [target])
    if len(vecs[0]) < len(series) + 1:
        raise InsufficientPrecision("need at least len(basis)+1 common coefficients")
    return solve_columns(vecs[:-1], vecs[-1])


def _zvalue(m: int) -> Fraction:
    """``zeta(2m)/pi^(2m)``."""
    from math import factorial
    return (-1) ** (m + 1) * bernoulli(2 * m) * 2 ** (2 * m - 1) / factorial(2 * m)


def _poly_mul(p, q):
    out = {}
    for (a1, b1), c1 in p.items():
        for (a2, b2), c2 in q.items():
            key = (a1 + a2, b1 + b2)
            out[key] = out.get(key, 0) + c1 * c2
    return {k: v for k, v in out.items() if v}


def eisenstein_poly_in_e4e6(k: int) -> dict[tuple[int, int], Fraction]:
    """``E_k`` as ``{(a, b): c}`` meaning ``sum c E4^a E6^b``.

    Runs the quadratic recursion for the lattice sums ``G_{2m} = 2 zeta(2m) E_{2m}``
    (powers of pi cancel by homogeneity), then renormalises.
    """
    if not isinstance(k, int) or k < 4 or k % 2:
        raise BadWeight(f"need even k >= 4, got {k!r}")
    K = k // 2
    G = {2: {(1, 0): 2 * _zvalue(2)}, 3: {(0, 1): 2 * _zvalue(3)}}
    for m in range(4, K + 1):
        acc = {}
        for j in range(2, m - 1):
            w = (2 * j - 1) * (2 * (m - j) - 1)
            for key, c in _poly_mul(G[j], G[m - j]).items():
                acc[key] = acc.get(key, 0) + w * c
        f = Fraction(3, (m - 3) * (2 * m - 1) * (2 * m + 1))
        G[m] = {key: f * c for key, c in acc.items() if c}
    norm = 2 * _zvalue(K)
    return {key: c / norm for key, c in sorted(G[K].items(), reverse=True)}


def evaluate_e4e6_poly(poly, prec: int) -> QExp:
    e4, e6 = _e(4, prec), _e(6, prec)
    total = QExp.constant(0, prec)
    for (a, b), c in poly.items():
        total = total + (e4 ** a * e6 ** b).scale(c)
    return total


# -------------------------------------------------------- identities

def sigma7_identity_check(nmax: int) -> bool:
    """``sigma_7(n) = sigma_3(n) + 120 sum_{0<m<n} sigma_3(m) sigma_3(n-m)``.

    Equivalent to ``E_4^2 = E_8``; written with ``sigma_3(0) = 1/240`` the
    convolution runs over ``0 <= m <= n`` and the identity reads
    ``240^2 * conv = 480 sigma_7(n)``.
    """
    s3 = [Fraction(v) for v in sigma_list(3, nmax)]
    s3[0] = Fraction(1, 240)
    s7 = sigma_list(7, nmax)
    for n in range(1, nmax + 1):
        conv = sum(s3[m] * s3[n - m] for m in range(n + 1))
        if 240 * 240 * conv != 480 * s7[n]:
            return False
        literal = s3[n] + 120 * sum(s3[m] * s3[n - m] for m in range(1, n))
        if literal != s7[n]:
            return False
    return True


def serre_derivative(f: NamedForm) -> NamedForm:
    """``D f - (k/12) E_2 f`` for a modular ``f`` of weight ``k`` and level 1."""
    if f.desc.quasimodular:
        raise BadInput("Serre derivative needs a modular (not quasi-modular) input")
    if f.desc.level != 1:
        raise BadInput("Serre derivative is implemented for level 1")
    s = f.series
    e2 = _e(2, max(1, int(s.bound)))
    out = s.qderive() - (e2 * s).scale(f.weight / 12)
    desc = replace(f.desc, weight2=f.desc.weight2 + 4)
    return NamedForm(desc, out, f"SD({f.name})")


def _bracket_desc(f1, f2, extra2):
    d1, d2 = f1.desc, f2.desc
    char = d1.character if d2.character == 0 else (d2.character if d1.character == 0 else 0)
    if d1.character and d1.character == d2.character:
        char = 0
    return FormDesc(d1.weight2 + d2.weight2 + extra2, lcm(d1.level, d2.level), char, True)


def rc_bracket1(f1: NamedForm, f2: NamedForm) -> NamedForm:
    """``k2 f2 D(f1) - k1 f1 D(f2)``."""
    k1, k2 = f1.weight, f2.weight
    a, b = f1.series, f2.series
    out = (b * a.qderive()).scale(k2) - (a * b.qderive()).scale(k1)
    return NamedForm(_bracket_desc(f1, f2, 4), out, f"[{f1.name},{f2.name}]_1")


def rc_bracket2(f1: NamedForm, f2: NamedForm) -> NamedForm:
    """``C(k2+1,2) D^2(f1) f2 - (k1+1)(k2+1) D(f1) D(f2) + C(k1+1,2) f1 D^2(f2)``."""
    k1, k2 = f1.weight, f2.weight
    a = (k2 + 1) * k2 / 2
    b = -(k1 + 1) * (k2 + 1)
    c = (k1 + 1) * k1 / 2
    x, y = f1.series, f2.series
    dx, dy = x.qderive(), y.qderive()
    out = (dx.qderive() * y).scale(a) + (dx * dy).scale(b) + (x * dy.qderive()).scale(c)
    return NamedForm(_bracket_desc(f1, f2, 8), out, f"[{f1.name},{f2.name}]_2")


def tau_sigma_formula_components(n: int) -> Fraction:
    """``(n/12)(5 sigma_3(n) + 7 sigma_5(n)) + 70 sum_{0<m<n} (2n-5m) sigma_3(m) sigma_5(n-m)``."""
    if n < 1:
        raise ValueError("n must be positive")
    s3 = sigma_list(3, n)
    s5 = sigma_list(5, n)
    head = Fraction(n, 12) * (5 * s3[n] + 7 * s5[n])
    return head + 70 * sum((2 * n - 5 * m) * s3[m] * s5[n - m] for m in range(1, n))


def siegel_coeffs(k: int, prec: int) -> QExp:
    """Laurent expansion of ``E_{12r-k+2}/Delta^r`` with ``r = dim M_k``."""
    if not isinstance(k, int) or k < 4 or k % 2:
        raise BadWeight(f"need even k >= 4, got {k!r}")
    r = dims.dim_mk_level1(k)
    w = 12 * r - k + 2
    d = eta_quotient([(1, 24)], prec) ** r
    return _e(w, prec) * d.inv()


def siegel_relation_check(f: NamedForm) -> bool:
    """``sum_{0<=n<=r} c_{-n} a(n) = 0`` for ``f`` in ``M_k``; also checks ``c_{-r} = 1``, ``c_0 != 0``."""
    k = f.weight
    if k.denominator != 1:
        raise BadWeight("integral weight required")
    k = int(k)
    r = dims.dim_mk_level1(k)
    c = siegel_coeffs(k, r + 1)
    if c.coefficient(-r) != 1 or c.coefficient(0) == 0:
        return False
    s = f.series
    return sum(c.coefficient(-n) * s.coefficient(n) for n in range(r + 1)) == 0


def weight2_level_eisenstein(N: int, prec: int) -> NamedForm:
    """``N E_2(N tau) - E_2(tau)`` on Gamma0(N)."""
    if N < 2:
        raise ValueError("N must be at least 2")
    e2 = _e(2, prec)
    s = e2.substitute_qm(N).truncate(prec).scale(N) - e2
    return NamedForm(FormDesc(4, N), s, f"{N}E2({N}tau)-E2")


def gamma04_eisenstein(which: str, prec: int) -> NamedForm:
    """Eisenstein series ``W1`` (weight 1) and ``F1``, ``F2`` (weight 3) on Gamma0(4) with character -4."""
    if which == "W1":
        c = [1] + [4 * sigma_twisted(-4, 0, n) for n in range(1, prec)]
        w2 = 2
    elif which == "F1":
        c = [1] + [-4 * sigma_twisted(-4, 2, n) for n in range(1, prec)]
        w2 = 6
    elif which == "F2":
        c = [0] + [sigma_twisted_star(-4, 2, n) for n in range(1, prec)]
        w2 = 6
    else:
        raise ValueError("which must be W1, F1 or F2")
    return NamedForm(FormDesc(w2, 4, -4), QExp.from_ints(c[:prec]), which)


def rk_formula(k: int, n: int) -> int:
    """Closed forms for the number of representations of ``n`` as a sum of ``k`` squares."""
    if k not in (2, 4, 6, 8):
        raise BadK(f"no closed form for k={k}")
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return 1
    q = Fraction(n)
    if k == 2:
        return 4 * sigma_twisted(-4, 0, n)
    if k == 4:
        return 8 * (sigma(1, q) - 4 * sigma(1, q / 4))
    if k == 6:
        return -4 * sigma_twisted(-4, 2, n) + 16 * sigma_twisted_star(-4, 2, n)
    return 16 * (sigma(3, q) - 2 * sigma(3, q / 2) + 16 * sigma(3, q / 4))


def rk_bruteforce(k: int, n: int) -> int:
    """``#{x in Z^k : sum x_i^2 = n}`` by adding one coordinate at a time."""
    if k < 1 or n < 0:
        raise ValueError("need k >= 1 and n >= 0")
    counts = [1] + [0] * n
    squares = [(x * x, 1 if x == 0 else 2) for x in range(isqrt(n) + 1)]
    for _ in range(k):
        new = [0] * (n + 1)
        for s, c in enumerate(counts):
            if c:
                for sq, mult in squares:
                    if s + sq > n:
                        break
                    new[s + sq] += c * mult
        counts = new
    return counts[n]


def theta4_decomposition_check(prec: int) -> bool:
    """``theta^4`` in the basis ``2E2(2t)-E2``, ``4E2(4t)-E2`` and ``theta^6 = F1 + 16 F2``."""
    if prec < 4:
        raise ValueError("prec must be at least 4")
    A = weight2_level_eisenstein(2, prec)
    B = weight2_level_eisenstein(4, prec)
    t4 = theta_power(4, prec)
    alpha, beta = to_basis(t4, [A, B])
    combo = A.series.scale(alpha) + B.series.scale(beta)
    if not combo.agrees(t4.series):
        return False
    if any(t4.series[n] != rk_formula(4, n) for n in range(prec)):
        return False
    t6 = theta_power(6, prec).series
    F1 = gamma04_eisenstein("F1", prec).series
    F2 = gamma04_eisenstein("F2", prec).series
    return t6 == F1 + F2.scale(16)


def eta_theta_relation_check(prec: int, exponents=(5, 2, 2)) -> bool:
    """``theta = eta^2(t+1/2)/eta(2t+1) = eta^a(2t)/(eta^b(t) eta^c(4t))``.

    The shifted quotient is handled by :func:`half_shift`: both roots of unity
    must cancel and the twisted series must divide out to ``theta``.
    """
    if prec < 8:
        raise ValueError("prec must be at least 8")
    a, b, c = exponents
    th = theta(prec).series
    q = eta_quotient([(2, a), (1, -b), (4, -c)], prec)
    if q.offset != 0 or q != th:
        return False
    ph1, s1 = half_shift(pentagonal_eta(prec) ** 2)
    ph2, s2 = half_shift(pentagonal_eta(prec).substitute_qm(2).truncate(prec))
    if (ph1 - ph2) % 1 != 0:
        return False
    ratio = s1 / s2
    return ratio.offset == 0 and ratio.agrees(th) and ratio.prec >= prec - 1


F5_POLY = {(4, 0): 1, (2, 2): -6, (0, 4): 1}


def laplacian(poly: dict) -> dict:
    """Laplacian of a polynomial ``{(i, j): c}`` in ``x, y``."""
    out = {}
    for (i, j), c in poly.items():
        if i >= 2:
            out[(i - 2, j)] = out.get((i - 2, j), 0) + c * i * (i - 1)
        if j >= 2:
            out[(i, j - 2)] = out.get((i, j - 2), 0) + c * j * (j - 1)
    return {k: v for k, v in out.items() if v}


def spherical_theta_f5(prec: int) -> NamedForm:
    """``sum_{x,y} (x^4 - 6x^2y^2 + y^4) q^(x^2+y^2)`` over ``x^2 + y^2 < prec``."""
    c = [0] * prec
    r = isqrt(max(prec - 1, 0))
    for x in range(-r, r + 1):
        for y in range(-r, r + 1):
            n = x * x + y * y
            if n < prec:
                c[n] += x**4 - 6 * x * x * y * y + y**4
    return NamedForm(FormDesc(10, 4, -4, True), QExp.from_ints(c), "f5")
