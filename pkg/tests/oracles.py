"""Slow, obviously-correct reference implementations used only by the tests."""

from fractions import Fraction
from itertools import product
from math import gcd, isqrt


def sigma_naive(k, n):
    return sum(d ** k for d in range(1, n + 1) if n % d == 0)


def is_prime_naive(n):
    return n >= 2 and all(n % d for d in range(2, isqrt(n) + 1))


def legendre_euler(a, p):
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def moebius_naive(n):
    m, out, p = n, 1, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            out = -out
        p += 1
    return -out if m > 1 else out


def phi_naive(n):
    return sum(1 for a in range(1, n + 1) if gcd(a, n) == 1)


def bernoulli_naive(n):
    # sum_{k<=n} C(n+1, k) B_k = 0 with B_0 = 1 (B_1 = -1/2 convention)
    from math import comb
    B = [Fraction(1)]
    for m in range(1, n + 1):
        B.append(-sum(comb(m + 1, k) * B[k] for k in range(m)) / (m + 1))
    return B[n]


def hurwitz_naive(N):
    """Weighted count of reduced positive forms of discriminant -N."""
    if N == 0:
        return Fraction(-1, 12)
    total = Fraction(0)
    a = 1
    while 3 * a * a <= N:
        for b in range(-a + 1, a + 1):
            if (N + b * b) % (4 * a):
                continue
            c = (N + b * b) // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if a == b == c:
                total += Fraction(1, 3)
            elif b == 0 and a == c:
                total += Fraction(1, 2)
            else:
                total += 1
        a += 1
    return total


def squares_count(k, n):
    r = isqrt(n)
    return sum(1 for x in product(range(-r, r + 1), repeat=k) if sum(t * t for t in x) == n)


def product_series(factors, prec):
    """Literal prod (1 - q^(m n))^r for n >= 1, truncated (no pentagonal shortcut)."""
    c = [Fraction(0)] * prec
    c[0] = Fraction(1)
    for m, r in factors:
        n = 1
        while m * n < prec:
            e = m * n
            for _ in range(abs(r)):
                if r > 0:
                    c = [c[i] - (c[i - e] if i >= e else 0) for i in range(prec)]
                else:
                    for i in range(e, prec):
                        c[i] += c[i - e]
            n += 1
    return c


def school_mul(a, b, n):
    out = [0] * n
    for i, x in enumerate(a[:n]):
        for j, y in enumerate(b[:n - i]):
            out[i + j] += x * y
    return out


def partitions_naive(n):
    # p(n) by the standard "parts at most k" recursion
    table = [[0] * (n + 1) for _ in range(n + 1)]
    for k in range(n + 1):
        table[0][k] = 1
    for m in range(1, n + 1):
        for k in range(1, n + 1):
            table[m][k] = table[m][k - 1] + (table[m - k][k] if m >= k else 0)
    return table[n][n]


def tau_naive(n):
    # q prod (1-q^k)^24 by repeated multiplication of integer lists
    c = [1] + [0] * (n - 1)
    for k in range(1, n):
        for _ in range(24):
            for i in range(n - 1, k - 1, -1):
                c[i] -= c[i - k]
    return c[n - 1]
