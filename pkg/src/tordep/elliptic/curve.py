"""Weierstrass curves over embedded number fields and their group law."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from flint import fmpq_poly

from ..algnum import AlgebraicNumber, Embedding, NumberField, as_algebraic, common_embedding
from ..algnum.fields import to_embedding

Elem = fmpq_poly
RawPoint = Optional[tuple[Elem, Elem]]


class SingularCurveError(ValueError):
    """The Weierstrass equation has zero discriminant."""


class EllipticCurve:
    """``Y^2 + a1 XY + a3 Y = X^3 + a2 X^2 + a4 X + a6`` with nonzero discriminant.

    The coefficients live in a common embedded field ``K`` (``self.emb``);
    ``self.a`` holds them as raw elements of ``K``.
    """

    def __init__(self, a1=0, a2=0, a3=0, a4=0, a6=0):
        coeffs = [as_algebraic(c) for c in (a1, a2, a3, a4, a6)]
        self.emb: Embedding = common_embedding(c.emb for c in coeffs)
        self.field: NumberField = self.emb.field
        self.a: tuple[Elem, ...] = tuple(to_embedding(c.elem, c.emb, self.emb) for c in coeffs)
        a1, a2, a3, a4, a6 = self.a
        F = self.field
        m = F.mul
        self.b2 = m(a1, a1) + 4 * a2
        self.b4 = 2 * a4 + m(a1, a3)
        self.b6 = m(a3, a3) + 4 * a6
        self.b8 = F.reduce(
            m(m(a1, a1), a6) + 4 * m(a2, a6) - m(m(a1, a3), a4) + m(a2, m(a3, a3)) - m(a4, a4)
        )
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        self.c4 = F.reduce(m(b2, b2) - 24 * b4)
        self.c6 = F.reduce(-m(b2, m(b2, b2)) + 36 * m(b2, b4) - 216 * b6)
        self.delta = F.reduce(
            -m(m(b2, b2), b8) - 8 * m(b4, m(b4, b4)) - 27 * m(b6, b6) + 9 * m(b2, m(b4, b6))
        )
        if self.delta.is_zero():
            raise SingularCurveError("curve is singular (discriminant is zero)")

    # -- constructors / serialization --
    @classmethod
    def short(cls, a4, a6) -> "EllipticCurve":
        return cls(0, 0, 0, a4, a6)

    @classmethod
    def from_json(cls, data: dict) -> "EllipticCurve":
        if "short" in data:
            a4, a6 = data["short"]
            return cls.short(Fraction(a4), Fraction(a6))
        vals = []
        for key in ("a1", "a2", "a3", "a4", "a6"):
            v = data.get(key, "0")
            vals.append(as_algebraic(v if isinstance(v, dict) else Fraction(v)))
        return cls(*vals)

    def to_json(self) -> dict:
        out = {}
        for key, c in zip(("a1", "a2", "a3", "a4", "a6"), self.coefficients()):
            out[key] = str(c.as_fraction()) if c.is_rational() else c.to_json()
        return out

    def coefficients(self) -> list[AlgebraicNumber]:
        return [self.number(c) for c in self.a]

    def number(self, elem: Elem) -> AlgebraicNumber:
        return AlgebraicNumber(self.emb, elem)

    @property
    def is_rational(self) -> bool:
        return self.field.is_rational

    def __repr__(self) -> str:
        names = ("a1", "a2", "a3", "a4", "a6")
        parts = [f"{n}={c!r}" for n, c in zip(names, self.coefficients()) if not c.is_zero()]
        return f"EllipticCurve({', '.join(parts)})"

    # -- raw group law in an arbitrary field containing K --
    def coeffs_in(self, target: Embedding) -> tuple[Elem, ...]:
        return tuple(to_embedding(c, self.emb, target) for c in self.a)

    def lift(self, P: "CurvePoint") -> tuple[Embedding, tuple[Elem, ...], RawPoint]:
        if P.is_infinity:
            return self.emb, self.a, None
        emb = common_embedding([self.emb, P.x.emb, P.y.emb])
        x = to_embedding(P.x.elem, P.x.emb, emb)
        y = to_embedding(P.y.elem, P.y.emb, emb)
        return emb, self.coeffs_in(emb), (x, y)


# ---------------------------------------------------------------------------
# element-level group law; ``a`` is the coefficient tuple inside ``F``


def raw_on_curve(F: NumberField, a: Sequence[Elem], P: RawPoint) -> bool:
    if P is None:
        return True
    a1, a2, a3, a4, a6 = a
    x, y = P
    m = F.mul
    lhs = m(y, y) + m(m(a1, x), y) + m(a3, y)
    x2 = m(x, x)
    rhs = m(x2, x) + m(a2, x2) + m(a4, x) + a6
    return F.reduce(lhs - rhs).is_zero()


def raw_neg(F: NumberField, a: Sequence[Elem], P: RawPoint) -> RawPoint:
    if P is None:
        return None
    a1, _, a3, _, _ = a
    x, y = P
    return x, F.reduce(-y - F.mul(a1, x) - a3)


def raw_add(F: NumberField, a: Sequence[Elem], P: RawPoint, Q: RawPoint) -> RawPoint:
    if P is None:
        return Q
    if Q is None:
        return P
    a1, a2, a3, a4, a6 = a
    m = F.mul
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2:
        s = F.reduce(y1 + y2 + m(a1, x2) + a3)
        if s.is_zero():
            return None
        den = F.inv(F.reduce(2 * y1 + m(a1, x1) + a3))
        x1sq = m(x1, x1)
        lam = m(F.reduce(3 * x1sq + 2 * m(a2, x1) + a4 - m(a1, y1)), den)
        nu = m(F.reduce(-m(x1sq, x1) + m(a4, x1) + 2 * a6 - m(a3, y1)), den)
    else:
        den = F.inv(F.reduce(x2 - x1))
        lam = m(F.reduce(y2 - y1), den)
        nu = m(F.reduce(m(y1, x2) - m(y2, x1)), den)
    x3 = F.reduce(m(lam, lam) + m(a1, lam) - a2 - x1 - x2)
    y3 = F.reduce(-m(lam + a1, x3) - nu - a3)
    return x3, y3


def raw_mul(F: NumberField, a: Sequence[Elem], k: int, P: RawPoint) -> RawPoint:
    if k < 0:
        return raw_mul(F, a, -k, raw_neg(F, a, P))
    result: RawPoint = None
    base = P
    while k:
        if k & 1:
            result = raw_add(F, a, result, base)
        k >>= 1
        if k:
            base = raw_add(F, a, base, base)
    return result


# Order computations run inversion-free: map to the short model
# y'^2 = x'^3 - 27 c4 x' - 54 c6 via x' = 36x + 3b2, y' = 108(2y + a1 x + a3)
# and work in Jacobian coordinates (X : Y : Z) with x' = X/Z^2, y' = Y/Z^3.

Jac = Optional[tuple[Elem, Elem, Elem]]


class _ShortModel:
    def __init__(self, F: NumberField, a: Sequence[Elem]):
        a1, a2, a3, a4, _ = a
        m = F.mul
        b2 = m(a1, a1) + 4 * a2
        b4 = 2 * a4 + m(a1, a3)
        self.F = F
        self.a = a
        self.b2 = b2
        self.A = F.reduce(-27 * (m(b2, b2) - 24 * b4))

    def to_jac(self, P: RawPoint) -> Jac:
        if P is None:
            return None
        a1, _, a3, _, _ = self.a
        x, y = P
        X = self.F.reduce(36 * x + 3 * self.b2)
        Y = self.F.reduce(108 * (2 * y + self.F.mul(a1, x) + a3))
        return X, Y, fmpq_poly([1])

    def dbl(self, P: Jac) -> Jac:
        if P is None:
            return None
        X, Y, Z = P
        if Y.is_zero():
            return None
        m = self.F.mul
        XX, YY, ZZ = m(X, X), m(Y, Y), m(Z, Z)
        S = 4 * m(X, YY)
        M = self.F.reduce(3 * XX + m(self.A, m(ZZ, ZZ)))
        T = self.F.reduce(m(M, M) - 2 * S)
        Y3 = self.F.reduce(m(M, S - T) - 8 * m(YY, YY))
        return T, Y3, 2 * m(Y, Z)

    def add(self, P: Jac, Q: Jac) -> Jac:
        if P is None:
            return Q
        if Q is None:
            return P
        m = self.F.mul
        X1, Y1, Z1 = P
        X2, Y2, Z2 = Q
        Z1Z1, Z2Z2 = m(Z1, Z1), m(Z2, Z2)
        U1, U2 = m(X1, Z2Z2), m(X2, Z1Z1)
        S1, S2 = m(Y1, m(Z2, Z2Z2)), m(Y2, m(Z1, Z1Z1))
        H = self.F.reduce(U2 - U1)
        r = self.F.reduce(S2 - S1)
        if H.is_zero():
            return self.dbl(P) if r.is_zero() else None
        HH = m(H, H)
        HHH = m(H, HH)
        V = m(U1, HH)
        X3 = self.F.reduce(m(r, r) - HHH - 2 * V)
        Y3 = self.F.reduce(m(r, V - X3) - m(S1, HHH))
        return X3, Y3, m(m(Z1, Z2), H)

    def mul(self, k: int, P: Jac) -> Jac:
        result: Jac = None
        base = P
        while k:
            if k & 1:
                result = self.add(result, base)
            k >>= 1
            if k:
                base = self.dbl(base)
        return result


def raw_order(F: NumberField, a: Sequence[Elem], P: RawPoint, max_order: int) -> int | None:
    """Least ``k <= max_order`` with ``kP = O``, by successive affine multiples.

    Affine coordinates keep the size growth of non-torsion multiples
    quadratic in ``k``; unnormalized projective sums would grow exponentially.
    """
    Q = P
    for k in range(1, max_order + 1):
        if Q is None:
            return k
        Q = raw_add(F, a, Q, P)
    return None


def prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def raw_has_exact_order(F: NumberField, a: Sequence[Elem], P: RawPoint, n: int) -> bool:
    """``nP = O`` and ``(n/p)P != O`` for each prime ``p | n``."""
    model = _ShortModel(F, a)
    J = model.to_jac(P)
    if model.mul(n, J) is not None:
        return False
    return all(model.mul(n // p, J) is not None for p in prime_factors(n))


# ---------------------------------------------------------------------------
# points


@dataclass(frozen=True, eq=False)
class CurvePoint:
    """The point at infinity (``x is None``) or an affine point."""

    x: Optional[AlgebraicNumber] = None
    y: Optional[AlgebraicNumber] = None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __eq__(self, other) -> bool:
        if not isinstance(other, CurvePoint):
            return NotImplemented
        if self.is_infinity or other.is_infinity:
            return self.is_infinity and other.is_infinity
        return self.x == other.x and self.y == other.y

    def __hash__(self) -> int:
        return 0 if self.is_infinity else hash((self.x, self.y))

    def __repr__(self) -> str:
        if self.is_infinity:
            return "CurvePoint(Infinity)"
        return f"CurvePoint({self.x!r}, {self.y!r})"

    def to_json(self):
        if self.is_infinity:
            return "infinity"
        return {"x": _num_json(self.x), "y": _num_json(self.y)}

    @classmethod
    def from_json(cls, data) -> "CurvePoint":
        if data == "infinity":
            return INFINITY
        return cls(as_algebraic(_num_parse(data["x"])), as_algebraic(_num_parse(data["y"])))


INFINITY = CurvePoint()


def _num_json(z: AlgebraicNumber):
    return str(z.as_fraction()) if z.is_rational() else z.to_json()


def _num_parse(v):
    return v if isinstance(v, dict) else Fraction(v)


def point(x, y) -> CurvePoint:
    return CurvePoint(as_algebraic(x), as_algebraic(y))


def _wrap(emb: Embedding, P: RawPoint) -> CurvePoint:
    if P is None:
        return INFINITY
    return CurvePoint(AlgebraicNumber(emb, P[0]), AlgebraicNumber(emb, P[1]))


def on_curve(E: EllipticCurve, P: CurvePoint) -> bool:
    emb, a, raw = E.lift(P)
    return raw_on_curve(emb.field, a, raw)


def neg(E: EllipticCurve, P: CurvePoint) -> CurvePoint:
    emb, a, raw = E.lift(P)
    return _wrap(emb, raw_neg(emb.field, a, raw))


def add(E: EllipticCurve, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    emb = common_embedding([E.emb, P.x.emb, P.y.emb, Q.x.emb, Q.y.emb])
    a = E.coeffs_in(emb)
    raw = []
    for R in (P, Q):
        raw.append((to_embedding(R.x.elem, R.x.emb, emb), to_embedding(R.y.elem, R.y.emb, emb)))
    return _wrap(emb, raw_add(emb.field, a, raw[0], raw[1]))


def scalar_mul(E: EllipticCurve, k: int, P: CurvePoint) -> CurvePoint:
    emb, a, raw = E.lift(P)
    return _wrap(emb, raw_mul(emb.field, a, k, raw))


def order_of(E: EllipticCurve, P: CurvePoint, max_order: int) -> int | None:
    """Exact order of ``P`` if it is at most ``max_order``."""
    if max_order < 1:
        raise ValueError("max_order must be positive")
    emb, a, raw = E.lift(P)
    return raw_order(emb.field, a, raw, max_order)


def discriminant(E: EllipticCurve) -> AlgebraicNumber:
    return E.number(E.delta)


def j_invariant(E: EllipticCurve) -> AlgebraicNumber:
    F = E.field
    c4 = E.c4
    return E.number(F.mul(F.mul(F.mul(c4, c4), c4), F.inv(E.delta)))
