"""Truncated q-expansions with exact rational coefficients.

A :class:`QExp` stores ``sum_{n < prec} c_n q^(n + offset)`` where ``offset``
is a rational whose denominator divides 24.  Coefficients are kept as integer
numerators over one shared denominator so products reduce to big-integer
convolutions.  Precision is tracked honestly: every operation reports only the
coefficients that the inputs determine.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import gcd, lcm

from .errors import OutOfGrid, OutOfPrecision, ZeroLeadingCoefficient

try:  # faster big-integer multiply when available
    import gmpy2 as _gmpy2
except ImportError:  # pragma: no cover
    _gmpy2 = None

__all__ = [
    "QExp", "LaurentQExp", "add", "scale", "mul", "pow", "inv", "div", "qderive",
    "substitute_qm", "coefficient", "head", "pentagonal_eta", "jacobi_eta_cube",
    "eta_quotient", "eta_product", "half_shift", "pochhammer_identity_check",
    "partition_series", "partition_identity_check", "triple_product_check",
    "KRONECKER_THRESHOLD",
]

# below this many terms the quadratic loop wins
KRONECKER_THRESHOLD = 48


# ------------------------------------------------------------ convolution

def _school(a, b, n):
    la, lb = len(a), len(b)
    out = [0] * n
    for i in range(min(la, n)):
        ai = a[i]
        if ai == 0:
            continue
        lim = min(lb, n - i)
        for j in range(lim):
            out[i + j] += ai * b[j]
    return out


def _pack(a, w, bias):
    return int.from_bytes(b"".join((x + bias).to_bytes(w, "little") for x in a), "little")


def _kronecker(a, b, n):
    """First ``n`` coefficients of ``a*b`` via one big-integer product.

    Each coefficient becomes a ``w``-byte digit; biases keep digits
    nonnegative so packing and unpacking are plain byte operations.
    """
    ma = max(abs(x) for x in a)
    mb = max(abs(x) for x in b)
    if ma == 0 or mb == 0:
        return [0] * n
    bound = ma * mb * min(len(a), len(b))
    w = (bound.bit_length() + 2 + 7) // 8
    bias = 1 << (8 * w - 1)
    base_bits = 8 * w
    ra = ((1 << (base_bits * len(a))) - 1) // ((1 << base_bits) - 1)
    rb = ((1 << (base_bits * len(b))) - 1) // ((1 << base_bits) - 1)
    A = _pack(a, w, bias) - bias * ra
    B = _pack(b, w, bias) - bias * rb
    if _gmpy2 is not None:
        C = int(_gmpy2.mpz(A) * _gmpy2.mpz(B))
    else:
        C = A * B
    m = len(a) + len(b) - 1
    rc = ((1 << (base_bits * m)) - 1) // ((1 << base_bits) - 1)
    raw = (C + bias * rc).to_bytes(w * m, "little")
    take = min(n, m)
    out = [int.from_bytes(raw[i * w:(i + 1) * w], "little") - bias for i in range(take)]
    out.extend([0] * (n - take))
    return out


def _conv(a, b, n):
    """First ``n`` terms of the Cauchy product of integer lists ``a`` and ``b``."""
    a = a[:n]
    b = b[:n]
    if not a or not b or n <= 0:
        return [0] * max(n, 0)
    if min(len(a), len(b)) < KRONECKER_THRESHOLD:
        return _school(a, b, n)
    return _kronecker(a, b, n)


def _normalize(nums, den):
    if den < 0:
        nums = [-x for x in nums]
        den = -den
    g = gcd(den, *nums) if nums else den
    if g > 1:
        nums = [x // g for x in nums]
        den //= g
    return nums, den


def _inverse_ints(a, n):
    """Return ``(nums, den)`` with ``nums/den = 1/a`` to ``n`` terms; ``a[0] != 0``."""
    c = a[0]
    hn, hd = [1], c
    hn, hd = _normalize(hn, hd)
    m = 1
    while m < n:
        m = min(2 * m, n)
        e = _conv(a, hn, m)                     # a*h, over hd
        r = [-x for x in e]
        r[0] += 2 * hd                          # 2 - a*h, over hd
        hn = _conv(hn, r, m)
        hn, hd = _normalize(hn, hd * hd)
    return hn, hd


# ------------------------------------------------------------------ QExp

def _check_offset(off: Fraction) -> Fraction:
    if 24 % off.denominator:
        raise OutOfGrid(f"offset {off} is not on the 1/24 grid")
    return off


class QExp:
    """Immutable truncated series ``sum_{n<prec} c_n q^(n+offset)``."""

    __slots__ = ("_nums", "_den", "_off", "_prec")

    def __init__(self, coeffs=(), offset=0, prec=None):
        fr = [Fraction(c) for c in coeffs]
        if prec is None:
            prec = len(fr)
        if prec < 0:
            raise ValueError("prec must be nonnegative")
        fr = fr[:prec] + [Fraction(0)] * (prec - len(fr))
        den = lcm(*(c.denominator for c in fr)) if fr else 1
        nums = [c.numerator * (den // c.denominator) for c in fr]
        self._set(nums, den, _check_offset(Fraction(offset)), prec)

    def _set(self, nums, den, off, prec):
        nums, den = _normalize(list(nums), den)
        object.__setattr__(self, "_nums", tuple(nums))
        object.__setattr__(self, "_den", den)
        object.__setattr__(self, "_off", off)
        object.__setattr__(self, "_prec", prec)

    def __setattr__(self, name, value):
        raise AttributeError("QExp is immutable")

    @classmethod
    def _raw(cls, nums, den, off, prec):
        nums = list(nums[:prec])
        if len(nums) < prec:
            nums.extend([0] * (prec - len(nums)))
        obj = cls.__new__(cls)
        obj._set(nums, den, _check_offset(Fraction(off)), prec)
        return obj

    @classmethod
    def from_ints(cls, nums, offset=0, prec=None, den=1):
        nums = list(nums)
        return cls._raw(nums, den, offset, len(nums) if prec is None else prec)

    @classmethod
    def constant(cls, c, prec, offset=0):
        return cls([c], offset, prec)

    @classmethod
    def monomial(cls, exponent, prec, c=1):
        """``c q^exponent`` known up to (excluding) ``exponent + prec``."""
        return cls([c], exponent, prec)

    # --- accessors
    @property
    def offset(self) -> Fraction:
        return self._off

    @property
    def offset_num(self) -> int:
        return self._off.numerator

    @property
    def offset_den(self) -> int:
        return self._off.denominator

    @property
    def prec(self) -> int:
        return self._prec

    @property
    def numerators(self) -> tuple[int, ...]:
        return self._nums

    @property
    def denominator(self) -> int:
        return self._den

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        d = self._den
        return tuple(Fraction(x, d) for x in self._nums)

    @property
    def bound(self) -> Fraction:
        """First exponent whose coefficient is unknown."""
        return self._off + self._prec

    def lead(self) -> int:
        """Index of the first nonzero stored coefficient (``prec`` if none)."""
        for i, x in enumerate(self._nums):
            if x:
                return i
        return self._prec

    def valuation(self) -> Fraction:
        return self._off + self.lead()

    def is_zero(self) -> bool:
        return not any(self._nums)

    def is_integral(self) -> bool:
        return self._den == 1

    def __len__(self):
        return self._prec

    def __getitem__(self, i):
        if isinstance(i, slice):
            return self.coeffs[i]
        if not 0 <= i < self._prec:
            raise OutOfPrecision(f"index {i} outside [0, {self._prec})")
        return Fraction(self._nums[i], self._den)

    def coefficient(self, exponent) -> Fraction:
        """Coefficient of ``q^exponent``."""
        idx = Fraction(exponent) - self._off
        if idx.denominator != 1:
            raise OutOfGrid(f"q^{exponent} is not on the grid of this series")
        idx = int(idx)
        if idx < 0:
            return Fraction(0)
        if idx >= self._prec:
            raise OutOfPrecision(f"q^{exponent} is beyond the known precision")
        return Fraction(self._nums[idx], self._den)

    def head(self, count) -> list[Fraction]:
        if count > self._prec:
            raise OutOfPrecision(f"only {self._prec} coefficients are known")
        return [Fraction(x, self._den) for x in self._nums[:count]]

    def terms(self):
        """Yield ``(exponent, coefficient)`` for the nonzero stored terms."""
        for i, x in enumerate(self._nums):
            if x:
                yield self._off + i, Fraction(x, self._den)

    # --- structural helpers
    def truncate(self, prec) -> "QExp":
        if prec > self._prec:
            raise OutOfPrecision(f"cannot extend precision {self._prec} to {prec}")
        return QExp._raw(self._nums, self._den, self._off, prec)

    def truncate_to(self, bound) -> "QExp":
        """Keep only exponents below ``bound``."""
        p = Fraction(bound) - self._off
        if p.denominator != 1:
            raise OutOfGrid("bound is not on the grid")
        return self.truncate(max(0, int(p)))

    def shift(self, k) -> "QExp":
        """Multiply by ``q^k``."""
        return QExp._raw(self._nums, self._den, self._off + Fraction(k), self._prec)

    def with_offset(self, off) -> "QExp":
        return QExp._raw(self._nums, self._den, Fraction(off), self._prec)

    def strip(self) -> "QExp":
        """Drop leading zeros into the offset."""
        L = self.lead()
        if L == 0 or L == self._prec:
            return self
        return QExp._raw(self._nums[L:], self._den, self._off + L, self._prec - L)

    def map_coeffs(self, fn) -> "QExp":
        """Apply ``fn(index, coefficient)`` to each stored coefficient."""
        return QExp([fn(i, c) for i, c in enumerate(self.coeffs)], self._off, self._prec)

    # --- arithmetic
    def _align(self, other):
        diff = self._off - other._off
        if diff.denominator != 1:
            raise OutOfGrid("offsets differ by a non-integer")
        base = min(self._off, other._off)
        end = min(self.bound, other.bound)
        p = int(end - base)
        den = lcm(self._den, other._den)

        def lift(f):
            s = int(f._off - base)
            m = den // f._den
            v = [0] * s + [x * m for x in f._nums]
            v = v[:p]
            return v + [0] * (p - len(v))

        return lift(self), lift(other), den, base, p

    def _coerce(self, other):
        if isinstance(other, QExp):
            return other
        c = Fraction(other)
        if self._off.denominator != 1:
            raise OutOfGrid("constant added to a series off the integer grid")
        p = max(int(self.bound), 1)
        return QExp([c], 0, p)

    def __add__(self, other):
        other = self._coerce(other)
        a, b, den, base, p = self._align(other)
        return QExp._raw([x + y for x, y in zip(a, b)], den, base, p)

    __radd__ = __add__

    def __neg__(self):
        return QExp._raw([-x for x in self._nums], self._den, self._off, self._prec)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "QExp":
        c = Fraction(c)
        return QExp._raw([x * c.numerator for x in self._nums], self._den * c.denominator,
                         self._off, self._prec)

    def __mul__(self, other):
        if not isinstance(other, QExp):
            try:
                return self.scale(other)
            except (TypeError, ValueError):
                return NotImplemented
        lf, lg = self.lead(), other.lead()
        p = min(self._prec + lg, other._prec + lf)
        nums = _conv(list(self._nums), list(other._nums), p)
        return QExp._raw(nums, self._den * other._den, self._off + other._off, p)

    def __rmul__(self, other):
        return self.scale(other)

    def inv(self) -> "QExp":
        L = self.lead()
        if L == self._prec:
            raise ZeroLeadingCoefficient("every known coefficient is zero")
        a = list(self._nums[L:])
        n = self._prec - L
        hn, hd = _inverse_ints(a, n)
        return QExp._raw([x * self._den for x in hn], hd, -(self._off + L), n)

    def __truediv__(self, other):
        if isinstance(other, QExp):
            return self * other.inv()
        return self.scale(1 / Fraction(other))

    def __rtruediv__(self, other):
        return self.inv().scale(other)

    def __pow__(self, m):
        if not isinstance(m, int):
            return NotImplemented
        if m < 0:
            return self.inv() ** (-m)
        if m == 0:
            return QExp([1], 0, max(self._prec, 1))
        result = None
        base = self
        while True:
            if m & 1:
                result = base if result is None else result * base
            m >>= 1
            if not m:
                return result
            base = base * base

    def qderive(self) -> "QExp":
        """``q d/dq``: multiplies the coefficient of ``q^e`` by ``e``."""
        on, od = self._off.numerator, self._off.denominator
        nums = [x * (i * od + on) for i, x in enumerate(self._nums)]
        return QExp._raw(nums, self._den * od, self._off, self._prec)

    def substitute_qm(self, d: int) -> "QExp":
        """The series in ``q^d`` (that is ``f(d tau)``)."""
        if d < 1:
            raise ValueError("d must be positive")
        if d == 1:
            return self
        nums = [0] * (d * self._prec)
        nums[::d] = self._nums
        return QExp._raw(nums, self._den, self._off * d, d * self._prec)

    # --- comparison / serialisation
    def __eq__(self, other):
        if not isinstance(other, QExp):
            return NotImplemented
        return (self._off == other._off and self._prec == other._prec
                and self._den == other._den and self._nums == other._nums)

    def __hash__(self):
        return hash((self._off, self._prec, self._den, self._nums))

    def agrees(self, other, upto=None) -> bool:
        """Equal on every exponent known to both (and below ``upto`` if given)."""
        a, b, _, base, p = self._align(other)
        if upto is not None:
            p = min(p, max(0, int(Fraction(upto) - base)))
        return a[:p] == b[:p]

    def to_json_obj(self) -> dict:
        from .arith import rational_to_str
        return {
            "offset_num": self.offset_num,
            "offset_den": self.offset_den,
            "prec": self._prec,
            "coeffs": [rational_to_str(c) for c in self.coeffs],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj) -> "QExp":
        return cls([Fraction(s) for s in obj["coeffs"]],
                   Fraction(obj["offset_num"], obj["offset_den"]), obj["prec"])

    @classmethod
    def from_json(cls, text) -> "QExp":
        return cls.from_json_obj(json.loads(text))

    def __repr__(self):
        shown = []
        for e, c in list(self.terms())[:6]:
            shown.append(f"{c}*q^{e}")
        body = " + ".join(shown) if shown else "0"
        return f"QExp({body} + O(q^{self.bound}))"


LaurentQExp = QExp


# ------------------------------------------------------- functional forms

def add(f: QExp, g: QExp) -> QExp:
    return f + g


def scale(c, f: QExp) -> QExp:
    return f.scale(c)


def mul(f: QExp, g: QExp) -> QExp:
    return f * g


def pow(f: QExp, m: int) -> QExp:  # noqa: A001
    return f ** m


def inv(f: QExp) -> QExp:
    return f.inv()


def div(f: QExp, g: QExp) -> QExp:
    return f / g


def qderive(f: QExp) -> QExp:
    return f.qderive()


def substitute_qm(f: QExp, d: int) -> QExp:
    return f.substitute_qm(d)


def coefficient(f: QExp, exponent) -> Fraction:
    return f.coefficient(exponent)


def head(f: QExp, count: int) -> list[Fraction]:
    return f.head(count)


# ------------------------------------------------------------ eta and co

def _pentagonal_ints(prec):
    out = [0] * prec
    k = 0
    while True:
        e1 = k * (3 * k - 1) // 2
        if e1 >= prec:
            break
        s = -1 if k % 2 else 1
        out[e1] += s
        if k:
            e2 = k * (3 * k + 1) // 2
            if e2 < prec:
                out[e2] += s
        k += 1
    return out


def eta_product(prec: int) -> QExp:
    """``prod_{n>=1} (1 - q^n)`` from its sparse pentagonal expansion."""
    return QExp.from_ints(_pentagonal_ints(prec))


def pentagonal_eta(prec: int) -> QExp:
    """``eta = q^(1/24) prod (1 - q^n)`` with ``prec`` stored coefficients."""
    return QExp.from_ints(_pentagonal_ints(prec), Fraction(1, 24))


def jacobi_eta_cube(prec: int) -> QExp:
    """``eta^3 = q^(1/8) sum_k (-1)^k (2k+1) q^(k(k+1)/2)``."""
    out = [0] * prec
    k = 0
    while k * (k + 1) // 2 < prec:
        out[k * (k + 1) // 2] = (-1) ** k * (2 * k + 1)
        k += 1
    return QExp.from_ints(out, Fraction(1, 8))


def eta_quotient(factors, prec: int) -> QExp:
    """``prod eta(m tau)^(r_m)`` with ``prec`` coefficients from its leading exponent."""
    factors = list(factors)
    if not factors:
        raise ValueError("factors must be nonempty")
    off = Fraction(0)
    series = None
    for m, r in factors:
        if m < 1:
            raise ValueError("eta argument multiplier must be positive")
        off += Fraction(m * r, 24)
        if r == 0:
            continue
        base = QExp.from_ints(_pentagonal_ints(-(-prec // m))).substitute_qm(m).truncate(prec)
        term = base ** r
        series = term if series is None else series * term
    if series is None:
        series = QExp([1], 0, prec)
    return series.with_offset(off)


def half_shift(f: QExp) -> tuple[Fraction, QExp]:
    """Expansion of ``f(tau + 1/2)`` as ``(phase, series)``.

    ``f(tau+1/2) = exp(2 pi i * phase) * series(tau)``: the fractional offset
    contributes a constant root of unity (``phase`` in turns) and the integer
    part flips the sign of odd-index coefficients.
    """
    phase = (f.offset / 2) % 1
    nums = [(-x if i % 2 else x) for i, x in enumerate(f.numerators)]
    return phase, QExp._raw(nums, f.denominator, f.offset, f.prec)


# --------------------------------------------------------- q-identities

def _div_one_minus(a, n, c=1):
    """Divide the integer list ``a`` by ``(1 - c t^n)`` in place (``n >= 1``)."""
    for m in range(n, len(a)):
        a[m] += c * a[m - n]
    return a


def _mul_one_minus(a, n, c=1):
    """Multiply the integer list ``a`` by ``(1 - c t^n)``, ``n >= 0``."""
    if n == 0:
        return [(1 - c) * x for x in a]
    out = list(a)
    for m in range(n, len(a)):
        out[m] -= c * a[m - n]
    return out


_POCHHAMMER_CASES = {
    # a = s * t^e with q = t^g
    "1": (1, 0, 1),
    "-1": (-1, 0, 1),
    "-1/q": (-1, -1, 1),
    "q^(1/2)": (1, 1, 2),
    "-q^(1/2)": (-1, 1, 2),
}


def _pochhammer_key(a_spec) -> str:
    key = str(a_spec).replace(" ", "").replace("{", "(").replace("}", ")")
    aliases = {"q^1/2": "q^(1/2)", "-q^1/2": "-q^(1/2)", "sqrt(q)": "q^(1/2)",
               "-sqrt(q)": "-q^(1/2)", "-q^-1": "-1/q", "-q^(-1)": "-1/q"}
    key = aliases.get(key, key)
    if key not in _POCHHAMMER_CASES:
        raise ValueError(f"unsupported specialisation {a_spec!r}")
    return key


def pochhammer_identity_check(a_spec, prec: int) -> bool:
    """Check both ``(aq; q)_oo`` expansions for the specialisation ``a_spec``.

    The second identity only converges formally when ``a q`` has positive
    valuation, so for ``a = -1/q`` only the first one is meaningful.
    """
    if prec < 2:
        raise ValueError("prec must be at least 2")
    s, e, g = _POCHHAMMER_CASES[_pochhammer_key(a_spec)]
    M = g * prec                                  # terms in t = q^(1/g)

    # product side
    prod = [1] + [0] * (M - 1)
    n = 1
    while e + g * n < M:
        prod = _mul_one_minus(prod, e + g * n, s)
        n += 1
    # first sum: (-1)^n a^n q^(n(n+1)/2) / (q)_n
    rhs = [0] * M
    qn = [1] + [0] * (M - 1)                      # 1/(q)_n in t
    n = 0
    while True:
        shift = e * n + g * n * (n + 1) // 2
        if shift >= M:
            break
        if n:
            qn = _div_one_minus(qn, g * n)
        sign = (-s) ** n
        for m in range(M - shift):
            rhs[m + shift] += sign * qn[m]
        n += 1
    if prod != rhs:
        return False
    if e + g <= 0:
        return True
    # second sum: a^n q^n / (q)_n equals 1/prod
    inv_prod = QExp.from_ints(prod).inv()
    if inv_prod.denominator != 1:
        return False
    rhs2 = [0] * M
    qn = [1] + [0] * (M - 1)
    n = 0
    while (e + g) * n < M:
        if n:
            qn = _div_one_minus(qn, g * n)
        shift = (e + g) * n
        for m in range(M - shift):
            rhs2[m + shift] += s ** n * qn[m]
        n += 1
    return list(inv_prod.numerators) == rhs2


def partition_series(prec: int) -> QExp:
    """``sum p(n) q^n`` as the inverse of the pentagonal product."""
    if prec < 1:
        raise ValueError("prec must be positive")
    return eta_product(prec).inv()


def partition_identity_check(prec: int) -> bool:
    """``1/prod(1-q^n) = sum q^(n^2)/(q)_n^2``, the right side built by division."""
    lhs = partition_series(prec).numerators
    rhs = [0] * prec
    acc = [1] + [0] * (prec - 1)                  # 1/(q)_n^2
    n = 0
    while n * n < prec:
        if n:
            acc = _div_one_minus(_div_one_minus(acc, n), n)
        for m in range(prec - n * n):
            rhs[m + n * n] += acc[m]
        n += 1
    return list(lhs) == rhs


def triple_product_check(u_degree_bound: int, q_prec: int, flip_u: bool = False) -> bool:
    """Jacobi triple product as Laurent polynomials in ``u`` over ``Z[[q]]``.

    ``flip_u`` replaces ``u`` by ``-u`` in the product side only, a mutation
    the comparison must detect.
    """
    if u_degree_bound < 2 or q_prec < 2:
        raise ValueError("bounds must be at least 2")
    P = q_prec
    su = -1 if flip_u else 1
    poly = {0: [1] + [0] * (P - 1)}

    def times(poly, qa, ub, c):
        # multiply by (1 - c q^qa u^ub)
        out = {k: list(v) for k, v in poly.items()}
        for k, v in poly.items():
            tgt = out.setdefault(k + ub, [0] * P)
            for m in range(P - qa):
                if v[m]:
                    tgt[m + qa] -= c * v[m]
        return {k: v for k, v in out.items() if any(v)}

    for n in range(1, P + 1):
        if n < P:
            poly = times(poly, n, 0, 1)
            poly = times(poly, n, 1, su)
        poly = times(poly, n - 1, -1, su)
    rhs = {}
    k = 0
    while k * (k + 1) // 2 < P:
        e = k * (k + 1) // 2
        sgn = (-1) ** k
        rhs.setdefault(k, [0] * P)[e] += sgn
        rhs.setdefault(-(k + 1), [0] * P)[e] -= sgn
        k += 1
    zero = [0] * P
    for d in range(-u_degree_bound, u_degree_bound + 1):
        if poly.get(d, zero) != rhs.get(d, zero):
            return False
    return True
