"""Rational functions in X and Y: parsing, exact evaluation and height budgets.

Grammar (whitespace is ignored)::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | base ('^' integer)?
    base   := integer | 'X' | 'Y' | '(' expr ')'

The exponent of ``^`` may carry a sign, e.g. ``X^-2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import flint
from flint import arb, ctx, fmpq_poly

from ..algnum import AlgebraicNumber, common_embedding
from ..algnum.balls import arb_upper
from ..algnum.fields import to_embedding
from ..elliptic import CurvePoint


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos} in {text!r}")
        self.text = text
        self.pos = pos


# -- tree --


@dataclass(frozen=True)
class Const:
    value: int

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class Var:
    name: str  # 'X' or 'Y'

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Neg:
    arg: "Expr"

    def __str__(self) -> str:
        return f"-({self.arg})"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * /
    left: "Expr"
    right: "Expr"

    def __str__(self) -> str:
        return f"({self.left} {self.op} {self.right})"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exp: int

    def __str__(self) -> str:
        return f"({self.base})^{self.exp}"


Expr = Union[Const, Var, Neg, BinOp, Pow]


@dataclass(frozen=True)
class RationalFunction:
    """A parsed function together with the text it came from."""

    text: str
    tree: Expr

    def __str__(self) -> str:
        return self.text


# -- parser --


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str):
        raise ParseError(msg, self.text, self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def integer(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected an integer")
        return int(self.text[start : self.pos])

    def expr(self) -> Expr:
        node = self.term()
        while self.peek() in ("+", "-"):
            op = self.text[self.pos]
            self.pos += 1
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Expr:
        node = self.factor()
        while self.peek() in ("*", "/"):
            op = self.text[self.pos]
            self.pos += 1
            node = BinOp(op, node, self.factor())
        return node

    def factor(self) -> Expr:
        if self.peek() == "-":
            self.pos += 1
            return Neg(self.factor())
        node = self.base()
        if self.peek() == "^":
            self.pos += 1
            sign = 1
            if self.peek() in ("+", "-"):
                sign = -1 if self.text[self.pos] == "-" else 1
                self.pos += 1
            node = Pow(node, sign * self.integer())
        return node

    def base(self) -> Expr:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            node = self.expr()
            self.take(")")
            return node
        if ch in ("X", "Y"):
            self.pos += 1
            return Var(ch)
        if ch.isdigit():
            return Const(self.integer())
        if not ch:
            self.error("unexpected end of input")
        self.error(f"unexpected character {ch!r}")


def parse_function(text: str) -> RationalFunction:
    p = _Parser(text)
    if not p.peek():
        p.error("empty expression")
    tree = p.expr()
    if p.peek():
        p.error("unexpected trailing input")
    _check_denominators(tree, text)
    return RationalFunction(text.strip(), tree)


def parse_functions(spec: str) -> list[RationalFunction]:
    """Comma-separated list of functions."""
    parts = [s for s in (t.strip() for t in spec.split(",")) if s]
    if not parts:
        raise ParseError("empty function list", spec, 0)
    return [parse_function(s) for s in parts]


# -- symbolic check: no denominator is identically zero --

_MCTX = flint.fmpq_mpoly_ctx.get(("X", "Y"), "lex")


def to_rational_function(tree: Expr):
    """``(numerator, denominator)`` as polynomials in X, Y."""
    X, Y = _MCTX.gens()
    one = _MCTX.from_dict({(0, 0): 1})
    if isinstance(tree, Const):
        return one * tree.value, one
    if isinstance(tree, Var):
        return (X if tree.name == "X" else Y), one
    if isinstance(tree, Neg):
        n, d = to_rational_function(tree.arg)
        return -n, d
    if isinstance(tree, Pow):
        n, d = to_rational_function(tree.base)
        if tree.exp < 0:
            if n.is_zero():
                raise ZeroDivisionError("negative power of the zero function")
            n, d = d, n
        return n ** abs(tree.exp), d ** abs(tree.exp)
    n1, d1 = to_rational_function(tree.left)
    n2, d2 = to_rational_function(tree.right)
    if tree.op == "+":
        n, d = n1 * d2 + n2 * d1, d1 * d2
    elif tree.op == "-":
        n, d = n1 * d2 - n2 * d1, d1 * d2
    elif tree.op == "*":
        n, d = n1 * n2, d1 * d2
    else:
        if n2.is_zero():
            raise ZeroDivisionError("division by the zero function")
        n, d = n1 * d2, d1 * n2
    g = n.gcd(d)
    if not g.is_zero() and not g.is_one():
        n, d = n / g, d / g
    return n, d


def _check_denominators(tree: Expr, text: str) -> None:
    try:
        to_rational_function(tree)
    except ZeroDivisionError as exc:
        raise ParseError(str(exc), text, len(text)) from None


# -- evaluation --


@dataclass(frozen=True)
class EvalResult:
    """``kind`` is ``"value"``, ``"vanished"`` or ``"pole"``."""

    kind: str
    value: AlgebraicNumber | None = None

    @property
    def is_value(self) -> bool:
        return self.kind == "value"


class _Pole(Exception):
    pass


def _eval(tree: Expr, F, x, y):
    if isinstance(tree, Const):
        return fmpq_poly([tree.value])
    if isinstance(tree, Var):
        return x if tree.name == "X" else y
    if isinstance(tree, Neg):
        return -_eval(tree.arg, F, x, y)
    if isinstance(tree, Pow):
        b = _eval(tree.base, F, x, y)
        if tree.exp < 0 and b.is_zero():
            raise _Pole
        return F.power(b, tree.exp)
    u = _eval(tree.left, F, x, y)
    v = _eval(tree.right, F, x, y)
    if tree.op == "+":
        return F.reduce(u + v)
    if tree.op == "-":
        return F.reduce(u - v)
    if tree.op == "*":
        return F.mul(u, v)
    if v.is_zero():
        raise _Pole
    return F.mul(u, F.inv(v))


def eval_function(f: RationalFunction | Expr, P: CurvePoint) -> EvalResult:
    """Exact value of ``f`` at the affine point ``P``.

    The tree is evaluated as written: any division by an exact zero is a
    pole, and a final value of zero is ``vanished``.
    """
    if P.is_infinity:
        raise ValueError("evaluation needs an affine point")
    tree = f.tree if isinstance(f, RationalFunction) else f
    emb = common_embedding([P.x.emb, P.y.emb])
    F = emb.field
    x = to_embedding(P.x.elem, P.x.emb, emb)
    y = to_embedding(P.y.elem, P.y.emb, emb)
    try:
        val = _eval(tree, F, x, y)
    except _Pole:
        return EvalResult("pole")
    if val.is_zero():
        return EvalResult("vanished")
    return EvalResult("value", AlgebraicNumber(emb, val))


# -- height budget --


def _log_upper(c: int) -> Fraction:
    c = abs(c)
    if c <= 1:
        return Fraction(0)
    with ctx.workprec(96):
        return arb_upper(arb(c).log())


LOG2_UPPER = _log_upper(2)


def function_height_bound(f: RationalFunction | Expr, hx, hy) -> Fraction:
    """Upper bound for ``h(f(x, y))`` given ``h(x) <= hx`` and ``h(y) <= hy``.

    Structural rules: products and quotients add, sums add plus ``log 2``,
    ``k``-th powers scale by ``|k|``, negation is free, and an integer
    constant contributes ``log max(1, |c|)``.
    """
    hx, hy = Fraction(hx), Fraction(hy)
    if hx < 0 or hy < 0:
        raise ValueError("height bounds must be nonnegative")
    tree = f.tree if isinstance(f, RationalFunction) else f
    return _hbound(tree, hx, hy)


def _hbound(tree: Expr, hx: Fraction, hy: Fraction) -> Fraction:
    if isinstance(tree, Const):
        return _log_upper(tree.value)
    if isinstance(tree, Var):
        return hx if tree.name == "X" else hy
    if isinstance(tree, Neg):
        return _hbound(tree.arg, hx, hy)
    if isinstance(tree, Pow):
        return abs(tree.exp) * _hbound(tree.base, hx, hy)
    total = _hbound(tree.left, hx, hy) + _hbound(tree.right, hx, hy)
    if tree.op in ("+", "-"):
        total += LOG2_UPPER
    return total
