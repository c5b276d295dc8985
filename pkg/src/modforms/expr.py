"""A small expression language for naming forms, e.g. ``(E4^3-E6^2)/1728``.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := atom ['^' int] | integer | '(' expr ')' ['^' int]
    atom   := 'E' int | 'E2' | 'Delta' | 'theta' | 'j' | 'eta' '(' int ')'
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .errors import BadWeight, FormSyntaxError, OutOfPrecision, UnknownAtom
from .qexp import QExp, eta_quotient

__all__ = ["Atom", "Num", "BinOp", "Pow", "Typed", "parse_form_expr", "unparse", "infer",
           "evaluate", "ATOMS"]

ATOMS = ("E<k>", "E2", "Delta", "theta", "j", "eta(m)")


@dataclass(frozen=True)
class Atom:
    name: str          # "E", "Delta", "theta", "j", "eta"
    arg: int | None = None


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exp: int


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()]))")


def _tokenize(text):
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip() == "":
                break
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise FormSyntaxError(f"unexpected character {text[bad]!r}", bad + 1)
        kind = m.lastgroup
        start = m.start(kind) + 1
        toks.append((kind, m.group(kind), start))
        pos = m.end()
    toks.append(("end", "", len(text) + 1))
    return toks


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, value):
        kind, v, pos = self.take()
        if v != value:
            found = "end of input" if kind == "end" else repr(v)
            raise FormSyntaxError(f"expected {value!r}, found {found}", pos)

    def expr(self):
        node = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op = self.take()[1]
            node = BinOp(op, node, self.factor())
        return node

    def exponent(self, base):
        if self.peek()[1] != "^":
            return base
        self.take()
        kind, v, pos = self.take()
        sign = 1
        if v == "-" and kind == "op":
            sign = -1
            kind, v, pos = self.take()
        if kind != "num":
            found = "end of input" if kind == "end" else repr(v)
            raise FormSyntaxError(f"expected an integer exponent, found {found}", pos)
        return Pow(base, sign * int(v))

    def factor(self):
        kind, v, pos = self.take()
        if kind == "num":
            return Num(int(v))
        if v == "(" and kind == "op":
            node = self.expr()
            self.expect(")")
            return self.exponent(node)
        if kind == "name":
            return self.exponent(self.atom(v, pos))
        found = "end of input" if kind == "end" else repr(v)
        raise FormSyntaxError(f"unexpected {found}", pos)

    def atom(self, name, pos):
        if name in ("Delta", "theta", "j"):
            return Atom(name)
        if name == "eta":
            self.expect("(")
            kind, v, p = self.take()
            if kind != "num" or int(v) < 1:
                raise FormSyntaxError("eta needs a positive integer argument", p)
            self.expect(")")
            return Atom("eta", int(v))
        m = re.fullmatch(r"E(\d+)", name)
        if m:
            return Atom("E", int(m.group(1)))
        raise UnknownAtom(f"unknown form {name!r} at offset {pos}; known: {', '.join(ATOMS)}")


def parse_form_expr(text: str):
    if not text or not text.strip():
        raise FormSyntaxError("empty expression", 1)
    p = _Parser(text)
    node = p.expr()
    kind, v, pos = p.peek()
    if kind != "end":
        raise FormSyntaxError(f"unexpected {v!r}", pos)
    return node


_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def unparse(node) -> str:
    """Canonical text that parses back to the same tree."""
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Atom):
        if node.name == "E":
            return f"E{node.arg}"
        if node.name == "eta":
            return f"eta({node.arg})"
        return node.name
    if isinstance(node, Pow):
        inner = unparse(node.base)
        if not isinstance(node.base, Atom):
            inner = f"({inner})"
        return f"{inner}^{node.exp}"
    p = _PREC[node.op]
    left = unparse(node.left)
    if isinstance(node.left, BinOp) and _PREC[node.left.op] < p:
        left = f"({left})"
    right = unparse(node.right)
    if isinstance(node.right, BinOp) and _PREC[node.right.op] <= p:
        right = f"({right})"
    return f"{left}{node.op}{right}"


@dataclass(frozen=True)
class Typed:
    """Weight and level of an expression; ``None`` where they are not defined."""

    weight: Fraction | None
    level: int | None
    quasimodular: bool = False


def _atom_type(a: Atom) -> Typed:
    if a.name == "E":
        return Typed(Fraction(a.arg), 1, a.arg == 2)
    if a.name == "Delta":
        return Typed(Fraction(12), 1)
    if a.name == "theta":
        return Typed(Fraction(1, 2), 4)
    if a.name == "j":
        return Typed(Fraction(0), 1)
    return Typed(Fraction(1, 2), a.arg)


def infer(node) -> Typed:
    if isinstance(node, Num):
        return Typed(Fraction(0), 1)
    if isinstance(node, Atom):
        return _atom_type(node)
    if isinstance(node, Pow):
        t = infer(node.base)
        w = None if t.weight is None else t.weight * node.exp
        return Typed(w, t.level, t.quasimodular)
    a, b = infer(node.left), infer(node.right)
    level = None if a.level is None or b.level is None else lcm(a.level, b.level)
    quasi = a.quasimodular or b.quasimodular
    if node.op in "+-":
        same = a.weight is not None and a.weight == b.weight
        return Typed(a.weight if same else None, level, quasi)
    if a.weight is None or b.weight is None:
        return Typed(None, level, quasi)
    w = a.weight + b.weight if node.op == "*" else a.weight - b.weight
    return Typed(w, level, quasi)


def _atom_series(a: Atom, P: int) -> QExp:
    from . import forms
    if a.name == "E":
        if a.arg == 2:
            return forms.eisenstein_E2(P).series
        if a.arg < 4 or a.arg % 2:
            raise BadWeight(f"E{a.arg}: Eisenstein series need even weight >= 2")
        return forms.eisenstein_E(a.arg, P).series
    if a.name == "Delta":
        return forms.delta(P + 1).series
    if a.name == "theta":
        return forms.theta(P).series
    if a.name == "j":
        return forms.jfunction(P).series
    return eta_quotient([(a.arg, 1)], P)


def _eval(node, P):
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Atom):
        return _atom_series(node, P)
    if isinstance(node, Pow):
        base = _eval(node.base, P)
        if isinstance(base, int):
            return Fraction(base) ** node.exp
        return base ** node.exp
    a, b = _eval(node.left, P), _eval(node.right, P)
    scalar_a = not isinstance(a, QExp)
    scalar_b = not isinstance(b, QExp)
    if scalar_a and scalar_b:
        return {"+": lambda: Fraction(a) + b, "-": lambda: Fraction(a) - b,
                "*": lambda: Fraction(a) * b, "/": lambda: Fraction(a) / b}[node.op]()
    if node.op == "+":
        return a + b if not scalar_a else b + a
    if node.op == "-":
        return a - b if not scalar_a else -(b - a)
    if node.op == "*":
        if scalar_a:
            return b.scale(a)
        if scalar_b:
            return a.scale(b)
        return a * b
    if scalar_b:
        return a.scale(1 / Fraction(b))
    if scalar_a:
        return b.inv().scale(a)
    return a / b


def evaluate(node, terms: int) -> QExp:
    """Series of ``node`` with at least ``terms`` coefficients from its first nonzero one."""
    if isinstance(node, str):
        node = parse_form_expr(node)
    slack = 8
    for _ in range(8):
        val = _eval(node, terms + slack)
        if not isinstance(val, QExp):
            val = QExp.constant(val, terms)
        s = val.strip()
        if s.prec >= terms:
            return s.truncate(terms)
        slack *= 2
    raise OutOfPrecision("expression loses too much precision to cancellation")
