"""Dimensions of spaces of modular forms of even weight on SL2(Z) and Gamma0(N)."""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .arith import divisors, euler_phi, factorint, kronecker, sigma
from .errors import BadN, BadWeight

__all__ = [
    "dim_mk_level1", "dim_sk_level1", "dim_gamma0", "gamma0_terms", "beta", "dim_new",
    "olddecomp_check",
]


def _check_weight(k, allow_zero=True):
    if not isinstance(k, int) or k < 0 or k % 2 or (k == 0 and not allow_zero):
        raise BadWeight(f"weight must be an even integer >= 0, got {k!r}")


def dim_mk_level1(k: int) -> int:
    _check_weight(k)
    return k // 12 if k % 12 == 2 else k // 12 + 1


def dim_sk_level1(k: int) -> int:
    _check_weight(k)
    return max(0, dim_mk_level1(k) - 1)


def gamma0_terms(N: int, k: int) -> dict[str, Fraction]:
    """The rational pieces ``A1, A23, A24, A3`` of the Gamma0(N) formula."""
    primes = [p for p, _ in factorint(N)] if N > 1 else []
    A1 = Fraction(k - 1, 12) * N
    for p in primes:
        A1 *= 1 + Fraction(1, p)
    A23 = Fraction(0)
    if N % 9:
        A23 = Fraction(k - 1, 3) - k // 3
        for p in primes:
            A23 *= 1 + kronecker(-3, p)
    A24 = Fraction(0)
    if N % 4:
        A24 = Fraction(k - 1, 4) - k // 4
        for p in primes:
            A24 *= 1 + kronecker(-4, p)
    A3 = Fraction(sum(euler_phi(gcd(d, N // d)) for d in divisors(N)), 2)
    return {"A1": A1, "A23": A23, "A24": A24, "A3": A3}


def _integral(x: Fraction) -> int:
    assert x.denominator == 1, f"dimension formula produced non-integer {x}"
    return int(x)


def dim_gamma0(N: int, k: int, space: str = "full") -> int:
    if not isinstance(N, int) or N < 1:
        raise BadN(f"level must be a positive integer, got {N!r}")
    _check_weight(k)
    if space not in ("full", "cusp"):
        raise ValueError("space must be 'full' or 'cusp'")
    if k == 0:
        return 1 if space == "full" else 0
    t = gamma0_terms(N, k)
    if space == "full":
        return _integral(t["A1"] - t["A23"] - t["A24"] + t["A3"])
    return _integral(t["A1"] - t["A23"] - t["A24"] - t["A3"] + (1 if k == 2 else 0))


def beta(n: int) -> int:
    """Multiplicative with ``beta(p) = -2``, ``beta(p^2) = 1`` and 0 on higher powers."""
    out = 1
    for _, e in factorint(n) if n > 1 else ():
        out *= (1, -2, 1)[e] if e <= 2 else 0
    return out


def dim_new(N: int, k: int) -> int:
    _check_weight(k, allow_zero=False)
    if k < 2:
        raise BadWeight("new-space dimensions need k >= 2")
    return sum(beta(N // M) * dim_gamma0(M, k, "cusp") for M in divisors(N))


def olddecomp_check(N: int, k: int) -> bool:
    """Cusp space dimension equals the sum over levels of lifted new spaces."""
    lhs = dim_gamma0(N, k, "cusp")
    rhs = sum(sigma(0, N // M) * dim_new(M, k) for M in divisors(N))
    return lhs == rhs
