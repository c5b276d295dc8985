"""Ramanujan's tau function by several independent routes."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .arith import factorint, h3, hurwitz_table, sigma_list
from .errors import BadPrime, BadRange, InternalInconsistency
from .qexp import _conv

__all__ = [
    "METHODS", "TauTable", "tau_table", "tau_trace_formula", "tau", "tau_congruence_check",
    "deligne_bound_check", "lehmer_scan",
]

METHODS = ("series", "recursion", "pentagonal", "jacobi", "sigma", "hybrid")


@dataclass(frozen=True)
class TauTable:
    upto: int
    values: tuple[int, ...]  # values[0] is a placeholder, values[n] = tau(n)
    method: str

    def __getitem__(self, n: int) -> int:
        if not 1 <= n <= self.upto:
            raise IndexError(n)
        return self.values[n]

    def as_list(self) -> list[int]:
        return list(self.values[1:])

    def to_tsv(self) -> str:
        return "".join(f"{n}\t{self.values[n]}\n" for n in range(1, self.upto + 1))

    def to_json(self) -> str:
        return json.dumps(self.as_list())


def _check_upto(upto):
    if not isinstance(upto, int) or upto < 1:
        raise BadRange(f"upto must be a positive integer, got {upto!r}")


def _series(B):
    # prod (1 - q^n)^3 = sum (-1)^k (2k+1) q^(k(k+1)/2), then raise to the 8th power
    c = [0] * B
    k = 0
    while k * (k + 1) // 2 < B:
        c[k * (k + 1) // 2] = (-1) ** k * (2 * k + 1)
        k += 1
    for _ in range(3):
        c = _conv(c, c, B)
    return [0] + c[:B]


def _online(B, s, step):
    """Solve ``t[n] = step(n, acc[n])`` where ``acc[n] = sum_{0<m<n} s[n-m] t[m]``.

    Divide and conquer: the left half of every range is finished before its
    contribution to the right half is added with one fast convolution.
    """
    t = [0] * (B + 1)
    acc = [0] * (B + 1)

    def solve(lo, hi):  # indices lo..hi-1
        if hi - lo <= 32:
            for n in range(lo, hi):
                a = acc[n]
                for m in range(lo, n):
                    a += s[n - m] * t[m]
                acc[n] = a
                t[n] = step(n, a)
            return
        mid = (lo + hi) // 2
        solve(lo, mid)
        prod = _conv(t[lo:mid], s[:hi - lo], hi - lo)
        for n in range(mid, hi):
            acc[n] += prod[n - lo]
        solve(mid, hi)

    solve(1, B + 1)
    return t


def _recursion(B):
    s = sigma_list(1, B)

    def step(n, a):
        if n == 1:
            return 1
        v, r = divmod(-24 * a, n - 1)
        if r:
            raise InternalInconsistency(f"sigma_1 recursion is not integral at n={n}")
        return v
    return _online(B, s, step)


def _sparse_recursion(B, offsets_weights):
    t = [0] * (B + 1)
    t[1] = 1
    for n in range(2, B + 1):
        total = 0
        for off, w in offsets_weights:
            if off >= n:
                break
            total += w(n) * t[n - off]
        v, r = divmod(total, 2 * n - 2)
        if r:
            raise InternalInconsistency(f"sparse recursion is not integral at n={n}")
        t[n] = v
    return t


def _pentagonal(B):
    # (2n-2) tau(n) = sum_{k != 0} (-1)^k (75k^2 + 25k + 2 - 2n) tau(n - k(3k+1)/2)
    terms = []
    k = 1
    while True:
        added = False
        for kk in (k, -k):
            off = kk * (3 * kk + 1) // 2
            if off <= B:
                sg = -1 if kk % 2 else 1
                a = sg * (75 * kk * kk + 25 * kk + 2)
                terms.append((off, lambda n, a=a, sg=sg: a - 2 * n * sg))
                added = True
        if not added:
            break
        k += 1
    terms.sort(key=lambda x: x[0])
    return _sparse_recursion(B, terms)


def _jacobi(B):
    # (2n-2) tau(n) = sum_{k >= 1} (-1)^k (2k+1)(9k^2 + 9k + 2 - 2n) tau(n - k(k+1)/2)
    terms = []
    k = 1
    while k * (k + 1) // 2 <= B:
        sg = (-1) ** k * (2 * k + 1)
        c = 9 * k * k + 9 * k + 2
        terms.append((k * (k + 1) // 2, lambda n, sg=sg, c=c: sg * (c - 2 * n)))
        k += 1
    return _sparse_recursion(B, terms)


def _sigma(B):
    s3 = sigma_list(3, B)
    s5 = sigma_list(5, B)
    s3[0] = s5[0] = 0
    c1 = _conv(s3, s5, B + 1)
    c2 = _conv([m * x for m, x in enumerate(s3)], s5, B + 1)
    t = [0] * (B + 1)
    for n in range(1, B + 1):
        v = Fraction(n * (5 * s3[n] + 7 * s5[n]), 12) + 70 * (2 * n * c1[n] - 5 * c2[n])
        if v.denominator != 1:
            raise InternalInconsistency(f"divisor-sum formula is not integral at n={n}")
        t[n] = int(v)
    return t


def _primes_upto(B):
    sieve = bytearray([1]) * (B + 1)
    sieve[:2] = b"\x00\x00"
    for p in range(2, isqrt(B) + 1):
        if sieve[p]:
            sieve[p * p::p] = bytearray(len(sieve[p * p::p]))
    return [p for p in range(B + 1) if sieve[p]]


def _trace(p, H3):
    total = 28 * p ** 6 - 28 * p ** 5 - 90 * p ** 4 - 35 * p ** 3 - 1
    acc = Fraction(0)
    t = 1
    while t * t < p:
        acc += t ** 6 * (4 * t ** 4 - 9 * p * t * t + 7 * p * p) * H3(p - t * t)
        t += 1
    v = total - 128 * acc
    if v.denominator != 1:
        raise InternalInconsistency(f"trace formula is not integral at p={p}")
    return int(v)


def _combine(prime_values, n):
    out = 1
    for p, e in factorint(n):
        tp = prime_values[p]
        prev, cur = 1, tp
        for _ in range(e - 1):
            prev, cur = cur, tp * cur - p ** 11 * prev
        out *= cur
    return out


def _hybrid(B):
    H = hurwitz_table(4 * B) if B >= 3 else None

    def H3(N):
        return H[4 * N] + 2 * H[N]
    vals = {2: -24}
    for p in _primes_upto(B):
        if p > 2:
            vals[p] = _trace(p, H3)
    return [0, 1] + [_combine(vals, n) for n in range(2, B + 1)]


_BUILDERS = {"series": _series, "recursion": _recursion, "pentagonal": _pentagonal,
             "jacobi": _jacobi, "sigma": _sigma, "hybrid": _hybrid}


def tau_table(upto: int, method: str = "series") -> TauTable:
    _check_upto(upto)
    if method not in _BUILDERS:
        raise ValueError(f"unknown method {method!r}; choose from {', '.join(METHODS)}")
    vals = _BUILDERS[method](upto)
    return TauTable(upto, tuple(vals[:upto + 1]), method)


def _is_prime(n):
    return n >= 2 and factorint(n) == ((n, 1),)


def tau_trace_formula(p: int) -> int:
    """``tau(p)`` for an odd prime ``p`` from Hurwitz class numbers, with ``O(sqrt p)`` terms."""
    if not isinstance(p, int) or p == 2 or not _is_prime(p):
        raise BadPrime(f"the class-number formula needs an odd prime, got {p!r}")
    return _trace(p, h3)


def tau(n: int) -> int:
    """``tau(n)`` via multiplicativity, the prime-power recursion and the trace formula."""
    if not isinstance(n, int) or n < 1:
        raise BadRange(f"n must be a positive integer, got {n!r}")
    if n == 1:
        return 1
    vals = {p: (-24 if p == 2 else tau_trace_formula(p)) for p, _ in factorint(n)}
    return _combine(vals, n)


def tau_congruence_check(upto: int, table: TauTable | None = None) -> bool:
    """``tau(n) = n sigma_5(n) = n sigma_1(n) mod 5`` and ``tau(n) = n sigma_3(n) mod 7``."""
    _check_upto(upto)
    t = table if table is not None and table.upto >= upto else tau_table(upto)
    s1, s3, s5 = (sigma_list(k, upto) for k in (1, 3, 5))
    for n in range(1, upto + 1):
        v = t[n]
        if (v - n * s5[n]) % 5 or (v - n * s1[n]) % 5 or (v - n * s3[n]) % 7:
            return False
    return True


def deligne_bound_check(pmax: int, table: TauTable | None = None) -> dict:
    """Check ``|tau(p)| < 2 p^(11/2)`` for primes up to ``pmax``; also record where ``|tau(p)| >= p^(11/2)``."""
    if pmax < 2:
        raise BadRange("pmax must be at least 2")
    t = table if table is not None and table.upto >= pmax else tau_table(pmax)
    primes = _primes_upto(pmax)
    holds = all(t[p] ** 2 < 4 * p ** 11 for p in primes)
    ratios = {p: abs(t[p]) / (2 * p ** 5.5) for p in primes}
    worst = max(ratios, key=ratios.get)
    strict_failures = [p for p in primes if t[p] ** 2 >= p ** 11]
    return {"pmax": pmax, "primes": len(primes), "holds": holds, "max_ratio": ratios[worst],
            "max_ratio_prime": worst, "strict_bound_failures": strict_failures}


def lehmer_scan(upto: int, table=None) -> int | None:
    """First ``n <= upto`` with ``tau(n) = 0``, or ``None``.

    ``table`` may be a :class:`TauTable` or any sequence indexed from ``n = 1``.
    """
    _check_upto(upto)
    if table is None:
        table = tau_table(upto)
    vals = table.as_list() if isinstance(table, TauTable) else list(table)
    for n, v in enumerate(vals[:upto], start=1):
        if v == 0:
            return n
    return None
