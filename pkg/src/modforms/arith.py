"""Exact scalar number theory.

Divisor sums, Kronecker symbols, Bernoulli numbers, Hurwitz class numbers and
special values of Dedekind zeta functions of real quadratic fields.  Every
function is pure; rationals are :class:`fractions.Fraction` (plain ``int`` is
returned where the value is always integral).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, isqrt

import numpy as np

from .errors import BadDiscriminant

__all__ = [
    "factorint", "divisors", "sigma", "sigma_list", "kronecker", "sigma_twisted",
    "sigma_twisted_star", "bernoulli", "bernoulli_poly", "generalized_bernoulli",
    "moebius", "euler_phi", "is_fundamental_discriminant", "fundamental_decomposition",
    "hurwitz", "hurwitz_table", "h3", "zeta_k_special", "r5_via_zeta", "r7_via_L",
    "l_chi_neg2", "sigma_sum_identity_check", "rational_to_str", "rational_from_str",
]


# ---------------------------------------------------------------- factoring

@lru_cache(maxsize=65536)
def factorint(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorisation of ``|n|`` as sorted ``((p, e), ...)`` pairs."""
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    out = []
    for p in (2, 3):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    p = 5
    step = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += step
        step = 6 - step
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def divisors(n: int) -> list[int]:
    """Positive divisors of ``|n|`` in increasing order."""
    divs = [1]
    for p, e in factorint(n):
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def _as_positive_int(n) -> int | None:
    if isinstance(n, Fraction):
        if n.denominator != 1:
            return None
        n = n.numerator
    n = int(n)
    return n if n > 0 else None


def sigma(k: int, n) -> int:
    """Sum of ``d**k`` over positive divisors of ``n``.

    Zero when ``n`` is not a positive integer (a Fraction such as ``n/4`` is
    accepted, which is how the sum-of-squares formulas are written).
    """
    m = _as_positive_int(n)
    if m is None:
        return 0
    total = 1
    for p, e in factorint(m):
        if k == 0:
            total *= e + 1
        else:
            pk = p**k
            total *= (pk ** (e + 1) - 1) // (pk - 1)
    return total


def sigma_list(k: int, N: int) -> list[int]:
    """``[sigma_k(0), ..., sigma_k(N)]`` by a divisor sieve (``sigma_k(0)`` is 0)."""
    out = [0] * (N + 1)
    for d in range(1, N + 1):
        dk = d**k
        for m in range(d, N + 1, d):
            out[m] += dk
    return out


_TAB2 = (0, 1, 0, -1, 0, -1, 0, 1)


def kronecker(a: int, b: int) -> int:
    """Kronecker symbol ``(a/b)`` for arbitrary integers."""
    if b == 0:
        return 1 if abs(a) == 1 else 0
    if a % 2 == 0 and b % 2 == 0:
        return 0
    v = 0
    while b % 2 == 0:
        v += 1
        b //= 2
    k = 1 if v % 2 == 0 else _TAB2[a & 7]
    if b < 0:
        b = -b
        if a < 0:
            k = -k
    while True:
        if a == 0:
            return k if b == 1 else 0
        v = 0
        while a % 2 == 0:
            v += 1
            a //= 2
        if v % 2 == 1:
            k = k * _TAB2[b & 7]
        if a & b & 2:
            k = -k
        r = abs(a)
        a = b % r
        b = r


def _chi(D: int, n: int) -> int:
    return 1 if D == 0 else kronecker(D, n)


def sigma_twisted(D: int, k: int, n) -> int:
    """``sum_{d|n} (D/d) d**k``; ``D == 0`` is the trivial character."""
    m = _as_positive_int(n)
    if m is None:
        return 0
    return sum(_chi(D, d) * d**k for d in divisors(m))


def sigma_twisted_star(D: int, k: int, n) -> int:
    """``sum_{d|n} (D/(n/d)) d**k``."""
    m = _as_positive_int(n)
    if m is None:
        return 0
    return sum(_chi(D, m // d) * d**k for d in divisors(m))


def moebius(n: int) -> int:
    if n < 1:
        raise ValueError("moebius needs n >= 1")
    if n == 1:
        return 1
    fac = factorint(n)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError("euler_phi needs n >= 1")
    out = n
    for p, _ in factorint(n) if n > 1 else ():
        out = out // p * (p - 1)
    return out


# --------------------------------------------------------------- Bernoulli

@lru_cache(maxsize=None)
def _bernoulli_plus(k: int) -> Fraction:
    # Akiyama-Tanigawa; yields the B_1 = +1/2 convention.
    a = [Fraction(1, m + 1) for m in range(k + 1)]
    for m in range(k + 1):
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
    return a[0]


def bernoulli(k: int) -> Fraction:
    """``B_k`` from ``t/(e^t - 1) = sum B_k t^k / k!`` (so ``B_1 = -1/2``)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 1:
        return Fraction(-1, 2)
    if k > 1 and k % 2 == 1:
        return Fraction(0)
    return _bernoulli_plus(k)


def bernoulli_poly(k: int, x) -> Fraction:
    x = Fraction(x)
    return sum(comb(k, j) * bernoulli(j) * x ** (k - j) for j in range(k + 1))


def generalized_bernoulli(k: int, D: int) -> Fraction:
    """``B_{k,chi}`` for the primitive character ``chi_D`` of conductor ``|D|``."""
    f = abs(D)
    s = sum(kronecker(D, a) * bernoulli_poly(k, Fraction(a, f)) for a in range(1, f + 1))
    return Fraction(f) ** (k - 1) * s


# ------------------------------------------------------------- discriminants

def _squarefree(n: int) -> bool:
    return n != 0 and all(e == 1 for _, e in factorint(n)) if abs(n) > 1 else n != 0


def is_fundamental_discriminant(D: int) -> bool:
    if D in (0, 1):
        return False
    if D % 4 == 1:
        return _squarefree(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and _squarefree(m)
    return False


def fundamental_decomposition(D: int) -> tuple[int, int]:
    """Write a discriminant ``D`` (not a square) as ``D0 * f**2`` with ``D0`` fundamental."""
    if D % 4 not in (0, 1):
        raise BadDiscriminant(f"{D} is not 0 or 1 mod 4")
    sign = -1 if D < 0 else 1
    core, cond = sign, 1
    for p, e in factorint(D):
        core *= p ** (e % 2)
        cond *= p ** (e // 2)
    if core % 4 == 1:
        return core, cond
    return 4 * core, cond // 2


# ---------------------------------------------------------- class numbers

@lru_cache(maxsize=None)
def _two_h_over_w(D0: int) -> Fraction:
    """``2 h(D0) / w(D0)`` for a negative fundamental discriminant."""
    f = -D0
    return Fraction(-sum(kronecker(D0, a) * a for a in range(1, f)), f)


@lru_cache(maxsize=None)
def hurwitz(N: int) -> Fraction:
    """Hurwitz-Kronecker class number ``H(N)``.

    Computed from the class number formula for the fundamental part of ``-N``
    and the conductor relation for orders; classes with extra automorphisms
    carry weight 1/2 (discriminant -4 type) and 1/3 (discriminant -3 type).
    """
    if N < 0:
        raise ValueError("hurwitz needs N >= 0")
    if N == 0:
        return Fraction(-1, 12)
    if N % 4 in (1, 2):
        return Fraction(0)
    D0, f = fundamental_decomposition(-N)
    base = _two_h_over_w(D0)
    total = Fraction(0)
    for d in divisors(f):
        term = Fraction(d)
        for p, _ in factorint(d) if d > 1 else ():
            term *= 1 - Fraction(kronecker(D0, p), p)
        total += term
    return base * total


def hurwitz_table(X: int) -> list[Fraction]:
    """``[H(0), ..., H(X)]`` by sweeping reduced forms ``(a, b, c)``.

    For fixed ``(a, b)`` the discriminants ``4ac - b^2`` form an arithmetic
    progression, which is added with one strided slice.
    """
    acc = np.zeros(X + 1, dtype=np.int64)   # 6 * H(N)
    amax = isqrt(X // 3) + 1
    for a in range(1, amax + 1):
        step = 4 * a
        for b in range(-a + 1, a + 1):
            # c >= a, and c > a when b < 0
            c0 = a + 1 if b < 0 else a
            n0 = 4 * a * c0 - b * b
            if n0 > X:
                continue
            acc[n0 : X + 1 : step] += 6
            # boundary forms c == a carry reduced weight
            if c0 == a:
                if b == 0:
                    acc[n0] -= 3
                elif b == a:
                    acc[n0] -= 4
    out = [Fraction(int(v), 6) for v in acc]
    out[0] = Fraction(-1, 12)
    return out


def h3(N: int) -> Fraction:
    """``H(4N) + 2 H(N)``."""
    if N < 1:
        raise ValueError("h3 needs N >= 1")
    return hurwitz(4 * N) + 2 * hurwitz(N)


# --------------------------------------------------- real quadratic fields

def _check_real_fundamental(D: int) -> None:
    if D % 4 not in (0, 1):
        raise BadDiscriminant(f"{D} is not 0 or 1 mod 4")
    if D <= 0 or isqrt(D) ** 2 == D:
        raise BadDiscriminant(f"{D} is not a positive non-square")
    if not is_fundamental_discriminant(D):
        raise BadDiscriminant(f"{D} is not a fundamental discriminant")


def _sigma_sum(D: int, k: int, divide_by_four: bool) -> int:
    r = isqrt(D)
    if r * r == D:
        r -= 1
    total = 0
    for s in range(-r, r + 1):
        m = D - s * s
        if divide_by_four:
            if m % 4:
                continue
            m //= 4
        total += sigma(k, m)
    return total


def zeta_k_special(D: int, m: int) -> Fraction:
    """``zeta_K(-m)`` for ``K = Q(sqrt D)`` and ``m`` in ``{1, 3}``."""
    _check_real_fundamental(D)
    if m == 1:
        return Fraction(_sigma_sum(D, 1, True), 60)
    if m == 3:
        return Fraction(_sigma_sum(D, 3, True), 120)
    raise ValueError("m must be 1 or 3")


def r5_via_zeta(D: int) -> int:
    value = 480 * (5 - 2 * kronecker(D, 2)) * zeta_k_special(D, 1)
    assert value.denominator == 1
    return int(value)


def l_chi_neg2(D: int) -> Fraction:
    """``L(chi_D, -2) = -B_{3,chi}/3`` for a fundamental discriminant ``D``."""
    return -generalized_bernoulli(3, D) / 3


def r7_via_L(D: int) -> int:
    """Number of representations of ``D`` as a sum of 7 squares, ``-D`` fundamental."""
    if D <= 0 or not is_fundamental_discriminant(-D):
        raise BadDiscriminant(f"-{D} is not a fundamental discriminant")
    value = -28 * (41 - 4 * kronecker(D, 2)) * l_chi_neg2(-D)
    assert value.denominator == 1
    return int(value)


def sigma_sum_identity_check(D: int) -> bool:
    _check_real_fundamental(D)
    chi2 = kronecker(D, 2)
    ok1 = _sigma_sum(D, 1, False) == 60 * (9 - 2 * chi2) * zeta_k_special(D, 1)
    ok3 = _sigma_sum(D, 3, False) == 120 * (129 - 8 * chi2) * zeta_k_special(D, 3)
    return ok1 and ok3


# ------------------------------------------------------------ serialisation

def rational_to_str(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def rational_from_str(s: str) -> Fraction:
    return Fraction(s.strip())
