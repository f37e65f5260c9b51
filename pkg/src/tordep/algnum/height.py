"""Weil heights, conjugates and root-of-unity recognition."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from flint import arb, ctx, fmpz, fmpz_poly

from .balls import ComplexBall, arb_lower, arb_upper
from .fields import MAX_PREC, PrecisionExhausted, roots_at
from .number import AlgebraicNumber

HEIGHT_WIDTH = Fraction(1, 1 << 40)


@dataclass(frozen=True)
class HeightValue:
    """Certified enclosure ``[lower, upper]`` of a Weil height, in nats."""

    lower: Fraction
    upper: Fraction

    def __post_init__(self):
        if not 0 <= self.lower <= self.upper:
            raise ValueError("invalid height enclosure")

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    def contains(self, x: float | Fraction) -> bool:
        return self.lower <= Fraction(x) <= self.upper

    def __float__(self) -> float:
        return float((self.lower + self.upper) / 2)


def conjugates(alpha: AlgebraicNumber, precision: int = 64) -> list[ComplexBall]:
    """One disjoint certified ball per root of the minimal polynomial."""
    if precision < 32:
        raise ValueError("precision must be at least 32 bits")
    target = Fraction(1, 1 << (precision // 2))
    prec = precision
    while prec <= MAX_PREC:
        balls = [ComplexBall.from_acb(r) for r in roots_at(alpha.minpoly, prec)]
        if all(b.radius <= target for b in balls):
            return balls
        prec *= 2
    raise PrecisionExhausted("conjugate balls did not shrink to the target radius")


def mahler_measure_log(poly: fmpz_poly, width: Fraction = HEIGHT_WIDTH) -> tuple[Fraction, Fraction]:
    """Enclosure of ``log M(poly)`` for a squarefree integer polynomial."""
    d = poly.degree()
    prec = 64
    while prec <= MAX_PREC:
        with ctx.workprec(prec):
            lead = arb(abs(poly.leading_coefficient())).log()
            lo, hi = arb_lower(lead), arb_upper(lead)
            for r in roots_at(poly, prec):
                a = r.abs_upper()
                b = r.abs_lower()
                if arb_upper(a) <= 1:
                    continue
                if arb_lower(b) > 1:
                    lg = r.abs_lower().log()
                    lo += arb_lower(lg)
                    hi += arb_upper(r.abs_upper().log())
                else:
                    hi += arb_upper(a.log())
        lo = max(lo, Fraction(0))
        if hi - lo <= width * d:
            return lo, hi
        prec *= 2
    raise PrecisionExhausted("Mahler measure enclosure did not reach the target width")


def weil_height(alpha: AlgebraicNumber, width: Fraction = HEIGHT_WIDTH) -> HeightValue:
    """Absolute logarithmic Weil height ``log M(minpoly) / degree``.

    ``h(0)`` is taken to be 0.
    """
    if alpha.is_zero():
        return HeightValue(Fraction(0), Fraction(0))
    if alpha.is_rational():
        return rational_height(alpha.as_fraction())
    mp = alpha.minpoly
    lo, hi = mahler_measure_log(mp, width)
    d = mp.degree()
    return HeightValue(lo / d, hi / d)


def rational_height(q: Fraction) -> HeightValue:
    m = max(abs(q.numerator), q.denominator)
    if m == 1:
        return HeightValue(Fraction(0), Fraction(0))
    prec = 96
    with ctx.workprec(prec):
        lg = arb(m).log()
    return HeightValue(arb_lower(lg), arb_upper(lg))


@lru_cache(maxsize=None)
def totients_up_to(n: int) -> tuple[int, ...]:
    return tuple(int(fmpz(m).euler_phi()) if m else 0 for m in range(n + 1))


def cyclotomic_orders(d: int) -> list[int]:
    """All ``m`` with ``phi(m) == d``; ``phi(m) >= sqrt(m/2)`` bounds the search."""
    bound = 2 * d * d + 2
    phis = totients_up_to(bound)
    return [m for m in range(1, bound + 1) if phis[m] == d]


def is_root_of_unity(alpha: AlgebraicNumber) -> int | None:
    """Exact multiplicative order if ``alpha`` is a root of unity."""
    if alpha.is_zero():
        return None
    if alpha.is_rational():
        q = alpha.as_fraction()
        return {1: 1, -1: 2}.get(q) if q.denominator == 1 else None
    return minpoly_is_cyclotomic(alpha.minpoly)


def minpoly_is_cyclotomic(poly: fmpz_poly) -> int | None:
    """``m`` if ``poly`` is exactly the m-th cyclotomic polynomial."""
    if poly.leading_coefficient() != 1:
        return None
    for m in cyclotomic_orders(poly.degree()):
        if poly == fmpz_poly.cyclotomic(m):
            return m
    return None
