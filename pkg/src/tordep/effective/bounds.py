"""Certified height bounds for coordinates of torsion points."""

from __future__ import annotations

import math
from fractions import Fraction

from flint import arb, ctx

from ..algnum import AlgebraicNumber, weil_height
from ..algnum.balls import arb_upper
from ..elliptic import EllipticCurve, discriminant, j_invariant
from ..multdep import masser_lattice_bound
from .expr import LOG2_UPPER

# Silverman (Math. Comp. 55, 1990, Thm 1.1): on an integral Weierstrass model,
#   -(1/8) h(j) - (1/12) h(Delta) - 0.973 <= hhat(P) - (1/2) h(x(P)).
# Torsion points have hhat = 0, so h(x) <= (1/4) h(j) + (1/6) h(Delta) + 1.946.
SILVERMAN_CONST = Fraction(1946, 1000)


def _log_upper(q) -> Fraction:
    q = Fraction(q)
    if q <= 1:
        return Fraction(0)
    with ctx.workprec(96):
        return arb_upper(arb(q.numerator).log() - arb(q.denominator).log())


def integral_scale(E: EllipticCurve) -> int:
    """Least common multiple ``u`` of the minimal-polynomial leading
    coefficients; ``u^i a_i`` is then an algebraic integer."""
    u = 1
    for c in E.coefficients():
        if not c.is_zero():
            u = math.lcm(u, abs(int(c.minpoly.leading_coefficient())))
    return u


def _h(z: AlgebraicNumber) -> Fraction:
    return weil_height(z).upper


def torsion_coordinate_height_bound(E: EllipticCurve) -> tuple[Fraction, Fraction]:
    """``(hx, hy)`` with ``h(x) <= hx`` and ``h(y) <= hy`` for every torsion point.

    The bound is for the given model: the curve is scaled by ``u`` to an
    integral model (for which the inequality above holds), and
    ``x = x'/u^2`` costs at most ``2 log u``.  For ``y`` we use the curve
    equation ``y^2 + b y = c`` with ``b = a1 x + a3``, ``c = x^3 + a2 x^2 +
    a4 x + a6``: ``h(y) = h(c)/2`` when ``b = 0`` and otherwise
    ``h(y) <= h(b) + h(c) + log 2`` (a root of ``z^2 + b z - c``).
    """
    u = integral_scale(E)
    delta_int = discriminant(E) * (u**12)
    hx = Fraction(1, 4) * _h(j_invariant(E)) + Fraction(1, 6) * _h(delta_int)
    hx += SILVERMAN_CONST + 2 * _log_upper(u)

    a1, a2, a3, a4, a6 = E.coefficients()
    terms = [3 * hx]
    for coeff, k in ((a2, 2), (a4, 1), (a6, 0)):
        if not coeff.is_zero():
            terms.append(_h(coeff) + k * hx)
    hc = sum(terms, Fraction(0)) + _log_upper(len(terms))
    if a1.is_zero() and a3.is_zero():
        hy = hc / 2
    else:
        bterms = []
        if not a1.is_zero():
            bterms.append(_h(a1) + hx)
        if not a3.is_zero():
            bterms.append(_h(a3))
        hb = sum(bterms, Fraction(0)) + (LOG2_UPPER if len(bterms) == 2 else 0)
        hy = hb + hc + LOG2_UPPER
    return hx, hy


def exponent_box(n: int, B, eps) -> int:
    """Sup-norm bound ``ceil((n B / eps)^(n-1))`` for the relation search."""
    return masser_lattice_bound(n, B, eps)
