"""Dense linear algebra over the rationals."""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import InsufficientPrecision, NotInSpan

__all__ = ["RatMatrix", "solve_columns", "rank", "charpoly", "poly_str"]


class RatMatrix:
    """Immutable dense matrix of :class:`Fraction` entries (row-major)."""

    __slots__ = ("rows", "cols", "_e")

    def __init__(self, entries):
        e = tuple(tuple(Fraction(x) for x in row) for row in entries)
        if not e or any(len(r) != len(e[0]) for r in e):
            raise ValueError("matrix rows must be nonempty and of equal length")
        object.__setattr__(self, "_e", e)
        object.__setattr__(self, "rows", len(e))
        object.__setattr__(self, "cols", len(e[0]))

    def __setattr__(self, name, value):
        raise AttributeError("RatMatrix is immutable")

    @classmethod
    def identity(cls, n):
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, cols):
        return cls([list(r) for r in zip(*cols)])

    def __getitem__(self, ij):
        i, j = ij
        return self._e[i][j]

    def row(self, i):
        return self._e[i]

    def column(self, j):
        return tuple(r[j] for r in self._e)

    def tolist(self):
        return [list(r) for r in self._e]

    def __eq__(self, other):
        return isinstance(other, RatMatrix) and self._e == other._e

    def __hash__(self):
        return hash(self._e)

    def __add__(self, other):
        return RatMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self._e, other._e)])

    def __sub__(self, other):
        return RatMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self._e, other._e)])

    def scale(self, c):
        c = Fraction(c)
        return RatMatrix([[c * a for a in r] for r in self._e])

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        oc = [other.column(j) for j in range(other.cols)]
        return RatMatrix([[sum(a * b for a, b in zip(r, c)) for c in oc] for r in self._e])

    def apply(self, vec):
        return [sum(a * Fraction(b) for a, b in zip(r, vec)) for r in self._e]

    def trace(self):
        return sum(self._e[i][i] for i in range(min(self.rows, self.cols)))

    def det(self):
        return (-1) ** self.rows * charpoly(self)[-1]

    def charpoly(self):
        return charpoly(self)

    def to_json_obj(self):
        from .arith import rational_to_str
        return [[rational_to_str(x) for x in r] for r in self._e]

    def to_json(self):
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json(cls, text):
        return cls([[Fraction(x) for x in r] for r in json.loads(text)])

    def __repr__(self):
        return "RatMatrix(" + repr([[str(x) for x in r] for r in self._e]) + ")"


def _rref(rows):
    """Row-reduce in place; returns pivot column list (first nonzero pivot)."""
    m = len(rows)
    n = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        rows[r] = [x / piv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return pivots


def rank(vectors) -> int:
    rows = [[Fraction(x) for x in v] for v in vectors]
    if not rows:
        return 0
    return len(_rref(rows))


def solve_columns(columns, target):
    """Unique ``x`` with ``sum_i x_i columns[i] == target``.

    Raises :class:`InsufficientPrecision` when the columns are dependent on the
    supplied rows and :class:`NotInSpan` when the system is inconsistent.
    """
    r = len(columns)
    if r == 0:
        if any(Fraction(t) != 0 for t in target):
            raise NotInSpan("target is nonzero but the basis is empty")
        return []
    L = len(target)
    if any(len(c) != L for c in columns):
        raise ValueError("columns and target must have equal length")
    rows = [[Fraction(columns[i][k]) for i in range(r)] + [Fraction(target[k])] for k in range(L)]
    pivots = _rref(rows)
    if r in pivots:
        raise NotInSpan("target is not a combination of the basis")
    if len(pivots) < r:
        raise InsufficientPrecision("basis vectors are not independent on the known coefficients")
    x = [Fraction(0)] * r
    for i, c in enumerate(pivots):
        x[c] = rows[i][r]
    return x


def charpoly(A: RatMatrix) -> list[Fraction]:
    """Characteristic polynomial ``det(xI - A)``, highest degree first (Faddeev-LeVerrier)."""
    n = A.rows
    if A.cols != n:
        raise ValueError("charpoly needs a square matrix")
    coeffs = [Fraction(1)]
    M = [[Fraction(0)] * n for _ in range(n)]
    a = A.tolist()
    for k in range(1, n + 1):
        # M <- A M + c_{n-k+1} I
        M = [[sum(a[i][t] * M[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        for i in range(n):
            M[i][i] += coeffs[-1]
        AM_trace = sum(sum(a[i][t] * M[t][i] for t in range(n)) for i in range(n))
        coeffs.append(-AM_trace / k)
    return coeffs


def poly_str(coeffs, var="x") -> str:
    """Render a highest-first coefficient list, e.g. ``x^2 - 1080*x - 20468736``."""
    from .arith import rational_to_str
    deg = len(coeffs) - 1
    parts = []
    for i, c in enumerate(coeffs):
        c = Fraction(c)
        if c == 0:
            continue
        e = deg - i
        mag = abs(c)
        if e == 0:
            body = rational_to_str(mag)
        else:
            mono = var if e == 1 else f"{var}^{e}"
            body = mono if mag == 1 else f"{rational_to_str(mag)}*{mono}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for s, b in parts[1:]:
        out += f" {s} {b}"
    return out
