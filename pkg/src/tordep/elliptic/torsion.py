"""Enumeration of torsion points of exact order n."""

from __future__ import annotations

import threading
from dataclasses import dataclass

from flint import fmpq_poly

from ..algnum import AlgebraicNumber, KPoly, embedded_roots, extend
from ..algnum.fields import compose_mod
from .curve import (
    CurvePoint,
    EllipticCurve,
    raw_has_exact_order,
    raw_on_curve,
)
from .divpoly import reduced_division_polynomial, two_torsion_cubic

_lock = threading.Lock()


@dataclass(frozen=True, eq=False)
class TorsionPoint:
    point: CurvePoint
    order: int

    @property
    def x(self) -> AlgebraicNumber:
        return self.point.x

    @property
    def y(self) -> AlgebraicNumber:
        return self.point.y

    def sort_key(self) -> tuple:
        return (self.order,) + point_key(self.point)

    def to_json(self) -> dict:
        return {"point": self.point.to_json(), "order": self.order}

    def __repr__(self) -> str:
        return f"TorsionPoint({self.point!r}, order={self.order})"


def point_key(P: CurvePoint) -> tuple:
    """Deterministic key from the coordinate values (rounded centers)."""
    out = []
    for c in (P.x, P.y):
        z = complex(c)
        out += [round(z.real, 12), round(z.imag, 12)]
    return tuple(out)


def _primitive_part(E: EllipticCurve, n: int) -> KPoly:
    """``f_n`` with the roots of ``f_d`` removed for proper divisors ``d >= 3``."""
    g = reduced_division_polynomial(E, n)
    for d in range(3, n):
        if n % d == 0:
            h = g.gcd(reduced_division_polynomial(E, d))
            if h.degree() > 0:
                g = g.divmod(h)[0]
    return g


def _two_torsion(E: EllipticCurve) -> list[TorsionPoint]:
    out = []
    for emb, x in embedded_roots(E.emb, two_torsion_cubic(E).coeffs):
        a = E.coeffs_in(emb)
        L = emb.field
        # 2P = O exactly when 2y + a1 x + a3 = 0
        y = L.reduce(-(L.mul(a[0], x) + a[2]) / 2)
        raw = (x, y)
        if not raw_on_curve(L, a, raw) or not raw_has_exact_order(L, a, raw, 2):
            raise ArithmeticError("2-torsion certification failed")
        out.append(TorsionPoint(CurvePoint(AlgebraicNumber(emb, x), AlgebraicNumber(emb, y)), 2))
    return out


def _higher_torsion(E: EllipticCurve, n: int) -> list[TorsionPoint]:
    K = E.field
    g = _primitive_part(E, n)
    out = []
    if g.degree() < 1:
        return out
    a = E.a
    for ext1 in extend(K, g.coeffs):
        L1 = ext1.field
        x1 = ext1.root
        a_L1 = [compose_mod(c, ext1.base_image, L1.modulus) for c in a]
        a1, a2, a3, a4, a6 = a_L1
        m = L1.mul
        x1sq = m(x1, x1)
        rhs = L1.reduce(m(x1sq, x1) + m(a2, x1sq) + m(a4, x1) + a6)
        b = L1.reduce(m(a1, x1) + a3)
        for ext2 in extend(L1, [-rhs, b, fmpq_poly([1])]):
            L2 = ext2.field
            x2 = compose_mod(x1, ext2.base_image, L2.modulus)
            y2 = ext2.root
            k_img = compose_mod(ext1.base_image, ext2.base_image, L2.modulus)
            a_L2 = [compose_mod(c, ext2.base_image, L2.modulus) for c in a_L1]
            # x generates at most L1, so its minimal polynomial is cheaper there
            L2.seed_minpoly(x2, L1.minpoly(x1))
            raw = (x2, y2)
            # exact certification in the abstract field: valid for every embedding
            if not raw_on_curve(L2, a_L2, raw):
                raise ArithmeticError("torsion point is not on the curve")
            if not raw_has_exact_order(L2, a_L2, raw, n):
                raise ArithmeticError(f"torsion point does not have exact order {n}")
            for emb in L2.embeddings():
                if not K.is_rational:
                    hit = K.select_embedding(lambda p, e=emb: e.evaluate(k_img, p))
                    if hit is not E.emb:
                        continue
                    emb.register(E.emb, k_img)
                P = CurvePoint(AlgebraicNumber(emb, x2), AlgebraicNumber(emb, y2))
                out.append(TorsionPoint(P, n))
    return out


def torsion_points(E: EllipticCurve, n: int) -> list[TorsionPoint]:
    """All points of exact order ``n`` over the algebraic closure, sorted."""
    if n < 1:
        raise ValueError("n must be positive")
    cache = E.__dict__.setdefault("_torsion", {})
    with _lock:
        hit = cache.get(n)
    if hit is not None:
        return list(hit)
    if n == 1:
        pts = []
    elif n == 2:
        pts = _two_torsion(E)
    else:
        pts = _higher_torsion(E, n)
    pts.sort(key=TorsionPoint.sort_key)
    with _lock:
        cache[n] = tuple(pts)
    return pts


def torsion_catalog(E: EllipticCurve, n_max: int) -> list[TorsionPoint]:
    """All affine torsion points of exact order at most ``n_max``."""
    if n_max < 1:
        raise ValueError("n_max must be positive")
    out = []
    for n in range(2, n_max + 1):
        out.extend(torsion_points(E, n))
    return out
