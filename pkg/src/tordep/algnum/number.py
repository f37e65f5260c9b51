"""Exact algebraic numbers.

An :class:`AlgebraicNumber` is an element of an embedded number field.  Its
canonical description (primitive minimal polynomial plus an isolating
ball around the selected root) is derived on demand and is what equality,
hashing and serialization use.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from flint import acb, fmpq, fmpq_poly, fmpz_poly

from .balls import ComplexBall
from .fields import (
    QQ_EMB,
    START_PREC,
    MAX_PREC,
    Embedding,
    NumberField,
    PrecisionExhausted,
    common_embedding,
    embedded_roots,
    primitive,
    select_root,
    to_embedding,
)

Rational = Union[int, Fraction]


class AlgebraicNumber:
    __slots__ = ("emb", "elem", "_minpoly", "_root_index")

    def __init__(self, emb: Embedding, elem: fmpq_poly):
        self.emb = emb
        self.elem = emb.field.reduce(elem)
        self._minpoly: fmpz_poly | None = None
        self._root_index: int | None = None

    # -- constructors --
    @classmethod
    def from_rational(cls, q: Rational | str) -> "AlgebraicNumber":
        q = Fraction(q)
        return cls(QQ_EMB, fmpq_poly([fmpq(q.numerator, q.denominator)]))

    @classmethod
    def from_root(cls, poly: fmpz_poly | list, ball: ComplexBall | acb) -> "AlgebraicNumber":
        """The root of ``poly`` inside ``ball``; the ball must isolate it."""
        if not isinstance(poly, fmpz_poly):
            poly = fmpz_poly([int(c) for c in poly])
        target = ball.to_acb() if isinstance(ball, ComplexBall) else ball
        fields = [NumberField.get(f) for f, _ in primitive(poly).factor()[1]]
        emb, _ = select_root(fields, _fixed(target), fixed=True)
        return cls(emb, emb.field.gen())

    @classmethod
    def from_json(cls, data: dict) -> "AlgebraicNumber":
        poly = fmpz_poly([int(c) for c in data["minpoly"]])
        return cls.from_root(poly, ComplexBall.from_json(data))

    # -- canonical data --
    @property
    def field(self) -> NumberField:
        return self.emb.field

    @property
    def minpoly(self) -> fmpz_poly:
        if self._minpoly is None:
            self._minpoly = self.field.minpoly(self.elem)
        return self._minpoly

    @property
    def degree(self) -> int:
        return self.minpoly.degree()

    def is_rational(self) -> bool:
        return self.elem.degree() <= 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational number")
        c = self.elem[0] if self.elem.degree() == 0 else fmpq(0)
        return Fraction(int(c.p), int(c.q))

    def ball(self, prec: int = START_PREC) -> acb:
        """Enclosure of the value with about ``prec`` bits of accuracy."""
        return self.emb.evaluate(self.elem, prec)

    @property
    def root_index(self) -> int:
        """Index of this number among the reference roots of its minpoly."""
        if self._root_index is None:
            mp = self.minpoly
            if mp.degree() == 1:
                self._root_index = 0
            else:
                emb, _ = select_root([NumberField.get(mp)], self.ball)
                self._root_index = emb.index
        return self._root_index

    @property
    def isolator(self) -> ComplexBall:
        if self.minpoly.degree() == 1:
            return ComplexBall(self.as_fraction(), Fraction(0), Fraction(0))
        return ComplexBall.from_acb(NumberField.get(self.minpoly).roots()[self.root_index])

    def isolator_at(self, prec: int) -> ComplexBall:
        """A refined isolating ball (deterministic for a given ``prec``)."""
        if self.minpoly.degree() == 1:
            return self.isolator
        return ComplexBall.from_acb(NumberField.get(self.minpoly).embedding(self.root_index).root(prec))

    def to_json(self, prec: int = START_PREC) -> dict:
        out = {"minpoly": [str(int(c)) for c in self.minpoly.coeffs()]}
        out.update(self.isolator_at(prec).to_json())
        return out

    def __complex__(self) -> complex:
        z = self.ball(60)
        return complex(float(z.real.mid()), float(z.imag.mid()))

    def __repr__(self) -> str:
        if self.is_rational():
            return f"AlgebraicNumber({self.as_fraction()})"
        z = complex(self)
        return f"AlgebraicNumber(root of {self.minpoly} near {z:.6g})"

    # -- arithmetic --
    def _coerce(self, other) -> "AlgebraicNumber":
        if isinstance(other, AlgebraicNumber):
            return other
        if isinstance(other, (int, Fraction)):
            return AlgebraicNumber.from_rational(other)
        return NotImplemented

    def _pair(self, other: "AlgebraicNumber") -> tuple[Embedding, fmpq_poly, fmpq_poly]:
        if other.emb is self.emb:
            return self.emb, self.elem, other.elem
        emb = common_embedding([self.emb, other.emb])
        return emb, to_embedding(self.elem, self.emb, emb), to_embedding(other.elem, other.emb, emb)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        emb, a, b = self._pair(other)
        return AlgebraicNumber(emb, a + b)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraicNumber(self.emb, -self.elem)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        emb, a, b = self._pair(other)
        return AlgebraicNumber(emb, a - b)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        emb, a, b = self._pair(other)
        return AlgebraicNumber(emb, emb.field.mul(a, b))

    __rmul__ = __mul__

    def inverse(self) -> "AlgebraicNumber":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return AlgebraicNumber(self.emb, self.field.inv(self.elem))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k: int) -> "AlgebraicNumber":
        if k < 0 and self.is_zero():
            raise ZeroDivisionError("negative power of zero")
        return AlgebraicNumber(self.emb, self.field.power(self.elem, k))

    def is_zero(self) -> bool:
        return self.elem.is_zero()

    def is_one(self) -> bool:
        return self.elem.degree() == 0 and self.elem[0] == 1

    # -- comparison --
    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        if other.emb is self.emb:
            return self.elem == other.elem
        if self.is_rational() and other.is_rational():
            return self.as_fraction() == other.as_fraction()
        if self.minpoly != other.minpoly:
            return False
        return self.root_index == other.root_index

    def __hash__(self) -> int:
        return hash(tuple(int(c) for c in self.minpoly.coeffs()))

    def conjugate_key(self, prec: int = 64) -> tuple:
        """Deterministic sort key from the refined isolator center."""
        b = self.isolator_at(prec)
        return (self.degree, b.re, b.im)


def _fixed(target: acb):
    return lambda prec: target


def an_from_rational(q: Rational | str) -> AlgebraicNumber:
    return AlgebraicNumber.from_rational(q)


def an_add(a: AlgebraicNumber, b: AlgebraicNumber) -> AlgebraicNumber:
    return a + b


def an_mul(a: AlgebraicNumber, b: AlgebraicNumber) -> AlgebraicNumber:
    return a * b


def an_neg(a: AlgebraicNumber) -> AlgebraicNumber:
    return -a


def an_inv(a: AlgebraicNumber) -> AlgebraicNumber:
    return a.inverse()


def an_equals(a: AlgebraicNumber, b: AlgebraicNumber) -> bool:
    return a == b


def as_algebraic(value) -> AlgebraicNumber:
    if isinstance(value, AlgebraicNumber):
        return value
    if isinstance(value, str) and value.strip().startswith("{"):
        import json

        return AlgebraicNumber.from_json(json.loads(value))
    if isinstance(value, dict):
        return AlgebraicNumber.from_json(value)
    return AlgebraicNumber.from_rational(value)


class AmbiguousBranch(ValueError):
    """The branch hint does not separate the candidate roots."""


def an_sqrt(alpha: AlgebraicNumber, hint: ComplexBall | acb | complex) -> AlgebraicNumber:
    """The square root of ``alpha`` lying inside the ``hint`` ball.

    A plain complex hint selects the nearer of the two roots.  The root is
    adjoined to ``alpha``'s own field, so the result and ``alpha`` share
    arithmetic without a compositum.
    """
    if alpha.is_zero():
        raise ValueError("square root of zero is not supported")
    roots = root_of_polynomial(alpha.emb, [-alpha.elem, fmpq_poly([0]), fmpq_poly([1])])
    if isinstance(hint, (complex, float, int)):
        return _nearest(roots, complex(hint))
    target = hint.to_acb() if isinstance(hint, ComplexBall) else hint
    return _pick_in_hint(roots, target)


def _nearest(roots: list[AlgebraicNumber], z: complex) -> AlgebraicNumber:
    dist = sorted((abs(complex(r) - z), k) for k, r in enumerate(roots))
    if len(dist) > 1 and dist[1][0] - dist[0][0] <= 1e-9 * max(1.0, dist[1][0]):
        raise AmbiguousBranch("hint is equidistant from two roots")
    return roots[dist[0][1]]


def root_of_polynomial(emb: Embedding, coeffs) -> list[AlgebraicNumber]:
    """All roots of a polynomial with coefficients in an embedded field."""
    return [AlgebraicNumber(e, r) for e, r in embedded_roots(emb, coeffs)]


def _pick_in_hint(roots: list[AlgebraicNumber], target: acb) -> AlgebraicNumber:
    prec = START_PREC
    while True:
        balls = [r.ball(prec) for r in roots]
        inside = [r for r, b in zip(roots, balls) if b.overlaps(target)]
        separated = all(
            not balls[i].overlaps(balls[j]) for i in range(len(balls)) for j in range(i)
        )
        if len(inside) == 1 and separated:
            return inside[0]
        if not inside:
            raise AmbiguousBranch("no root lies in the branch hint")
        if separated and len(inside) > 1:
            raise AmbiguousBranch("branch hint contains more than one root")
        prec *= 2
        if prec > MAX_PREC:
            raise PrecisionExhausted("could not separate the roots")


__all__ = [
    "AlgebraicNumber",
    "AmbiguousBranch",
    "an_from_rational",
    "an_add",
    "an_mul",
    "an_neg",
    "an_inv",
    "an_equals",
    "an_sqrt",
    "as_algebraic",
    "root_of_polynomial",
]

