"""Elliptic curves in long Weierstrass form: group law, division
polynomials and torsion enumeration over number fields."""

from .curve import (
    INFINITY,
    CurvePoint,
    EllipticCurve,
    SingularCurveError,
    add,
    discriminant,
    j_invariant,
    neg,
    on_curve,
    order_of,
    point,
    scalar_mul,
)
from .divpoly import DivisionPolynomial, division_polynomial, two_torsion_cubic
from .torsion import TorsionPoint, torsion_catalog, torsion_points

__all__ = [
    "INFINITY",
    "CurvePoint",
    "DivisionPolynomial",
    "EllipticCurve",
    "SingularCurveError",
    "TorsionPoint",
    "add",
    "discriminant",
    "division_polynomial",
    "j_invariant",
    "neg",
    "on_curve",
    "order_of",
    "point",
    "scalar_mul",
    "torsion_catalog",
    "torsion_points",
    "two_torsion_cubic",
]
