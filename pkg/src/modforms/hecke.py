"""Hecke operators on q-expansions, Hecke matrices and eigenforms."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt

from .arith import divisors, factorint, kronecker, moebius
from .errors import (BadInput, BadWeight, Inconclusive, InsufficientPrecision,
                     InternalInconsistency, MissingPrime, UnsupportedDimension)
from .forms import NamedForm, jfunction, mk_basis, sk_basis, to_basis
from .linalg import RatMatrix, charpoly
from .qexp import QExp

__all__ = [
    "hecke_action", "hecke_compose_check", "hecke_matrix", "Quad", "EigenData",
    "eigenforms", "maeda_check", "tn_on_j", "euler_factor", "coefficients_from_euler",
    "fricke_sign", "fricke_eta_identity_check", "is_rational_square",
]


def _series(f):
    return f.series if isinstance(f, NamedForm) else f


def hecke_action(f, k, n: int, N: int = 1, prec_target: int | None = None) -> QExp:
    """``T(n)`` in weight ``k`` on level ``N``:
    ``b(m) = sum_{d | (m, n), (d, N) = 1} d^(k-1) a(mn/d^2)``.

    Works on Laurent series (weight 0 gives the factors ``1/d``).  The output
    covers every ``m`` whose inputs are all known.
    """
    s = _series(f)
    if s.offset.denominator != 1:
        raise BadInput("Hecke operators act on integer-exponent series")
    if n < 1:
        raise ValueError("n must be positive")
    v = int(s.offset)
    end = int(s.bound)                    # first unknown exponent
    start = v * n if v < 0 else 0
    m_max = (end - 1) // n
    p = m_max - start + 1
    if prec_target is not None:
        if p < prec_target:
            raise InsufficientPrecision(f"T({n}) needs more input coefficients")
        p = prec_target
    if p < 1:
        raise InsufficientPrecision(f"T({n}) needs more input coefficients")
    ds = [d for d in divisors(n) if gcd(d, N) == 1]
    w = {d: Fraction(d) ** (k - 1) for d in ds}
    coeffs = s.coeffs

    def a(e):
        i = e - v
        return coeffs[i] if i >= 0 else 0

    out = []
    for m in range(start, start + p):
        total = Fraction(0)
        for d in ds:
            if m % d == 0:
                e = m * n // (d * d)
                if m * n % (d * d) == 0:
                    total += w[d] * a(e)
        out.append(total)
    return QExp(out, start, p)


def hecke_compose_check(n: int, m: int, k: int, prec: int, N: int = 1) -> bool:
    """``T(n)T(m) = sum_{d | (n,m), (d,N)=1} d^(k-1) T(nm/d^2)`` on a spanning set of ``M_k``."""
    P = n * m * (prec + 1) + 1
    span = [b.series for b in mk_basis(k, P)]
    for f in span:
        lhs = hecke_action(hecke_action(f, k, m, N), k, n, N)
        rhs = None
        for d in divisors(gcd(n, m)):
            if gcd(d, N) != 1:
                continue
            t = hecke_action(f, k, n * m // (d * d), N).scale(Fraction(d) ** (k - 1))
            rhs = t if rhs is None else rhs + t
        if min(lhs.prec, rhs.prec) < prec:
            raise InsufficientPrecision("not enough coefficients for the comparison")
        if not lhs.agrees(rhs):
            return False
    return True


def hecke_matrix(k: int, n: int) -> RatMatrix:
    """Matrix of ``T(n)`` on ``S_k`` in the basis ``Delta E4^a E6^b``; column ``j`` is ``T(n) b_j``."""
    if not isinstance(k, int) or k < 12 or k % 2:
        raise BadWeight(f"need even k >= 12, got {k!r}")
    dim = len(sk_basis(k, 2))
    if dim == 0:
        raise UnsupportedDimension(f"S_{k} is zero")
    P = n * (dim + 3) + 1
    basis = sk_basis(k, P)
    cols = [to_basis(hecke_action(b, k, n), basis) for b in basis]
    return RatMatrix.from_columns(cols)


# ------------------------------------------------------ quadratic numbers

@dataclass(frozen=True)
class Quad:
    """``a + b sqrt(d)`` with rational ``a, b`` and squarefree integer ``d``."""

    a: Fraction
    b: Fraction = Fraction(0)
    d: int = 1

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    def _lift(self, o):
        if isinstance(o, Quad):
            if o.d != self.d and o.b and self.b:
                raise ValueError("different quadratic fields")
            return o
        return Quad(Fraction(o), 0, self.d)

    def __add__(self, o):
        o = self._lift(o)
        return Quad(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return Quad(-self.a, -self.b, self.d)

    def __sub__(self, o):
        return self + (-self._lift(o))

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        o = self._lift(o)
        return Quad(self.a * o.a + self.d * self.b * o.b, self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def conj(self):
        return Quad(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def __truediv__(self, o):
        o = self._lift(o)
        nm = o.norm()
        if nm == 0:
            raise ZeroDivisionError("division by zero in quadratic field")
        t = self * o.conj()
        return Quad(t.a / nm, t.b / nm, self.d)

    def __eq__(self, o):
        if not isinstance(o, Quad):
            try:
                o = Quad(Fraction(o), 0, self.d)
            except (TypeError, ValueError):
                return NotImplemented
        if self.b == 0 and o.b == 0:
            return self.a == o.a
        return (self.a, self.b, self.d) == (o.a, o.b, o.d)

    def __hash__(self):
        return hash((self.a, self.b, self.d if self.b else 1))

    def __float__(self):
        return float(self.a) + float(self.b) * self.d ** 0.5

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        sign = "+" if self.b > 0 else "-"
        mag = abs(self.b)
        coef = "" if mag == 1 else f"{mag}*"
        return f"{self.a} {sign} {coef}sqrt({self.d})"


def is_rational_square(x) -> bool:
    x = Fraction(x)
    if x < 0:
        return False
    p, q = x.numerator, x.denominator
    return isqrt(p) ** 2 == p and isqrt(q) ** 2 == q


def _sqrt_parts(disc: Fraction) -> tuple[Fraction, int]:
    """Write ``sqrt(disc) = c sqrt(d)`` with rational ``c`` and squarefree ``d``."""
    num = disc.numerator * disc.denominator
    c = Fraction(1, disc.denominator)
    d = 1
    for p, e in factorint(num) if abs(num) > 1 else ():
        c *= p ** (e // 2)
        if e % 2:
            d *= p
    if num < 0:
        d = -d
    return c, d


@dataclass
class EigenData:
    """One normalised eigenform ``A + sqrt(d) B`` of ``T(n)`` on ``S_k``."""

    k: int
    n: int
    charpoly: list
    eigenvalue: object
    coords: list = field(default_factory=list)
    rational_part: QExp | None = None
    irrational_part: QExp | None = None
    d: int = 1

    def coefficient(self, m: int) -> Quad:
        a = self.rational_part.coefficient(m)
        b = self.irrational_part.coefficient(m) if self.irrational_part is not None else 0
        return Quad(a, b, self.d)

    @property
    def exact(self) -> bool:
        return self.rational_part is not None


def eigenforms(k: int, n: int = 2, prec: int = 60) -> list[EigenData]:
    """Normalised eigenforms of ``T(n)`` on ``S_k``; exact when the charpoly has degree <= 2."""
    dim = len(sk_basis(k, 2))
    if dim == 0:
        return []
    M = hecke_matrix(k, n)
    cp = charpoly(M)
    basis = [b.series for b in sk_basis(k, prec)]
    out = []
    if dim == 1:
        f = basis[0].scale(1 / basis[0].coefficient(1))
        return [EigenData(k, n, cp, Quad(M[0, 0]), [Quad(1)], f, None, 1)]
    if dim == 2:
        _, b1, c0 = cp
        disc = b1 * b1 - 4 * c0
        if is_rational_square(disc):
            r = Fraction(isqrt(disc.numerator), isqrt(disc.denominator))
            lams = [Quad((-b1 + r) / 2), Quad((-b1 - r) / 2)]
            dd = 1
        else:
            c, dd = _sqrt_parts(disc)
            lams = [Quad(-b1 / 2, c / 2, dd), Quad(-b1 / 2, -c / 2, dd)]
        for lam in lams:
            if M[0, 1] != 0:
                v = [Quad(M[0, 1], 0, dd), lam - M[0, 0]]
            elif M[1, 0] != 0:
                v = [lam - M[1, 1], Quad(M[1, 0], 0, dd)]
            else:
                v = [Quad(1, 0, dd), Quad(0, 0, dd)] if lam == M[0, 0] else [Quad(0, 0, dd), Quad(1, 0, dd)]
            a1 = sum((vi * basis[i].coefficient(1) for i, vi in enumerate(v)), Quad(0, 0, dd))
            v = [vi / a1 for vi in v]
            A = basis[0].scale(v[0].a) + basis[1].scale(v[1].a)
            B = basis[0].scale(v[0].b) + basis[1].scale(v[1].b)
            out.append(EigenData(k, n, cp, lam, v, A, B if dd != 1 else None, dd))
        return out
    from mpmath.ctx_mp import MPContext
    mp = MPContext()
    mp.dps = 30
    roots = mp.polyroots([mp.mpf(c.numerator) / c.denominator for c in cp],
                         maxsteps=200, extraprec=200)
    return [EigenData(k, n, cp, r) for r in roots]


def maeda_check(k: int, n: int = 2) -> bool:
    """Irreducibility over Q of the characteristic polynomial of ``T(n)`` on ``S_k``."""
    dim = len(sk_basis(k, 2)) if k >= 12 else 0
    if dim == 0:
        raise BadWeight(f"S_{k} is zero")
    if dim > 2:
        raise UnsupportedDimension("exact irreducibility test implemented for dimension <= 2")
    cp = charpoly(hecke_matrix(k, n))
    if dim == 1:
        return True
    _, b, c = cp
    return not is_rational_square(b * b - 4 * c)


def tn_on_j(n: int, normalized: bool = False, checks: int = 4) -> list[Fraction]:
    """``T(n)`` applied to ``j`` (or ``J = j - 744``) as a polynomial in the same variable.

    Returns coefficients highest degree first.  Principal parts are removed
    against powers of the variable; the remainder must be a constant.
    """
    if n < 1:
        raise ValueError("n must be positive")
    P = n * (checks + 2) + 2
    j = jfunction(P).series
    var = j - 744 if normalized else j
    image = hecke_action(var, 0, n)
    powers = {1: var}
    for e in range(2, n + 1):
        powers[e] = powers[e - 1] * var
    rem = image
    coeffs = {}
    for e in range(n, 0, -1):
        c = rem.coefficient(-e)
        coeffs[e] = c
        if c:
            rem = rem - powers[e].scale(c)
    for e in range(n, 0, -1):
        if rem.coefficient(-e) != 0:
            raise InternalInconsistency("principal part did not cancel")
    c0 = rem.coefficient(0)
    for e in range(1, min(checks, int(rem.bound))):
        if rem.coefficient(e) != 0:
            raise InternalInconsistency(f"T({n}) image is not a polynomial in j")
    return [coeffs[e] for e in range(n, 0, -1)] + [c0]


def euler_factor(a_p, p: int, k: int, N: int = 1, D: int = 0) -> tuple[Fraction, Fraction, Fraction]:
    """Coefficients of ``1 - a_p X + chi(p) p^(k-1) X^2`` with ``X = p^-s``."""
    if N % p == 0:
        chi = 0
    else:
        chi = kronecker(D, p) if D else 1
    return Fraction(1), -Fraction(a_p), Fraction(chi * p ** (k - 1))


def coefficients_from_euler(ap, k: int, nmax: int, N: int = 1, D: int = 0) -> list[Fraction]:
    """``[0, a(1), ..., a(nmax)]`` from prime coefficients via the local recursions."""
    out = [Fraction(0)] * (nmax + 1)
    if nmax >= 1:
        out[1] = Fraction(1)
    for m in range(2, nmax + 1):
        fac = factorint(m)
        if len(fac) == 1:
            p, e = fac[0]
            if p not in ap:
                raise MissingPrime(f"a({p}) is needed")
            _, lin, quad = euler_factor(ap[p], p, k, N, D)
            prev = out[m // p]
            prev2 = out[m // (p * p)] if e >= 2 else Fraction(0)
            out[m] = -lin * prev - quad * prev2
        else:
            p, e = fac[0]
            q = p ** e
            out[m] = out[q] * out[m // q]
    return out


# ----------------------------------------------------------------- Fricke

def fricke_sign(f: NamedForm, prec_digits: int = 30, N: int | None = None) -> int:
    """Sign ``eps`` with ``f|_k W_N = eps f``, found numerically at ``tau0 = 1.2 i/sqrt(N)``."""
    from . import numeric

    N = f.desc.level if N is None else N
    k = f.desc.weight
    ctx = numeric.EvalContext(prec_digits + 10)
    mp = ctx.mp
    tau0 = mp.mpc(0, mp.mpf("1.2") / mp.sqrt(N))
    num = numeric.eval_series(f.series, -1 / (N * tau0), ctx)
    den = numeric.eval_series(f.series, tau0, ctx)
    kk = mp.mpf(k.numerator) / k.denominator
    ratio = mp.power(N, -kk / 2) * mp.power(tau0, -kk) * num / den
    tol = mp.mpf(10) ** (-(prec_digits // 2))
    for s in (1, -1):
        if abs(ratio - s) < tol:
            return s
    raise Inconclusive(f"Fricke ratio {mp.nstr(ratio, 10)} is not +-1")


def fricke_eta_identity_check(N: int, k: int, F, prec: int = 200, digits: int = 30,
                              tol_digits: int = 20) -> bool:
    """``G = sum_{d|N} mu(d) d^(k/2) F(d tau)`` satisfies ``G|_k W_N = mu(N) G`` numerically."""
    from . import numeric

    if moebius(N) == 0:
        raise BadInput(f"N={N} must be squarefree")
    s = _series(F)
    G = None
    for d in divisors(N):
        mu = moebius(d)
        if mu == 0:
            continue
        term = s.substitute_qm(d).truncate(prec).scale(mu * Fraction(d) ** (k // 2))
        G = term if G is None else G + term
    ctx = numeric.EvalContext(digits + 10)
    mp = ctx.mp
    muN = moebius(N)
    worst = mp.mpf(0)
    for theta in ("1.2", "1.57", "2.0"):
        tau = mp.expj(mp.mpf(theta)) / mp.sqrt(N)
        lhs = mp.power(N, -mp.mpf(k) / 2) * mp.power(tau, -k) * numeric.eval_series(G, -1 / (N * tau), ctx)
        rhs = muN * numeric.eval_series(G, tau, ctx)
        worst = max(worst, abs(lhs - rhs) / max(abs(rhs), mp.mpf(1)))
    return worst < mp.mpf(10) ** (-tol_digits)
