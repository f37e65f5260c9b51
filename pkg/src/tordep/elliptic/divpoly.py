"""Division polynomials.

Writing ``psi_n`` for the n-th division polynomial, we keep the x-only
polynomials ``f_n = psi_n`` (n odd) and ``f_n = psi_n / psi_2`` (n even),
which satisfy the recurrences

    f_{2m+1} = F^2 f_{m+2} f_m^3 - f_{m-1} f_{m+1}^3      (m even)
    f_{2m+1} = f_{m+2} f_m^3 - F^2 f_{m-1} f_{m+1}^3      (m odd)
    f_{2m}   = f_m (f_{m+2} f_{m-1}^2 - f_{m-2} f_{m+1}^2)

with ``F = psi_2^2 = 4x^3 + b2 x^2 + 2 b4 x + b6``.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..algnum import AlgebraicNumber, KPoly, root_of_polynomial
from .curve import EllipticCurve


def two_torsion_cubic(E: EllipticCurve) -> KPoly:
    return KPoly(E.field, [E.b6, 2 * E.b4, E.b2, 4])


def _cache(E: EllipticCurve) -> dict[int, KPoly]:
    cache = E.__dict__.get("_fpolys")
    if cache is None:
        K = E.field
        b2, b4, b6, b8 = E.b2, E.b4, E.b6, E.b8
        m = K.mul
        f3 = KPoly(K, [b8, 3 * b6, 3 * b4, b2, 3])
        f4 = KPoly(
            K,
            [
                K.reduce(m(b4, b8) - m(b6, b6)),
                K.reduce(m(b2, b8) - m(b4, b6)),
                10 * b8,
                10 * b6,
                5 * b4,
                b2,
                2,
            ],
        )
        cache = {0: KPoly(K, []), 1: KPoly(K, [1]), 2: KPoly(K, [1]), 3: f3, 4: f4}
        E.__dict__["_fpolys"] = cache
    return cache


def reduced_division_polynomial(E: EllipticCurve, n: int) -> KPoly:
    """``f_n`` as a polynomial in ``x`` over the coefficient field."""
    if n < 0:
        return -reduced_division_polynomial(E, -n)
    cache = _cache(E)
    if n in cache:
        return cache[n]
    F2 = None
    m = n // 2
    f = lambda k: reduced_division_polynomial(E, k)  # noqa: E731
    if n % 2:
        F2 = two_torsion_cubic(E) ** 2
        if m % 2 == 0:
            val = F2 * f(m + 2) * f(m) ** 3 - f(m - 1) * f(m + 1) ** 3
        else:
            val = f(m + 2) * f(m) ** 3 - F2 * f(m - 1) * f(m + 1) ** 3
    else:
        val = f(m) * (f(m + 2) * f(m - 1) ** 2 - f(m - 2) * f(m + 1) ** 2)
    cache[n] = val
    return val


@dataclass(frozen=True)
class DivisionPolynomial:
    """The x-polynomial of ``E[n]``: its roots are the x-coordinates of the
    nonzero points killed by ``n``.

    ``reduced`` is ``f_n``; for even ``n`` the full x-polynomial carries the
    extra factor ``F`` (the 2-torsion cubic).
    """

    curve: EllipticCurve
    n: int
    reduced: KPoly

    @property
    def polynomial(self) -> KPoly:
        if self.n % 2 == 0:
            return self.reduced * two_torsion_cubic(self.curve)
        return self.reduced

    def degree(self) -> int:
        return self.polynomial.degree()

    def coefficients(self) -> list[AlgebraicNumber]:
        return [self.curve.number(c) for c in self.polynomial.coeffs]

    def roots(self) -> list[AlgebraicNumber]:
        """Distinct roots compatible with the curve's embedding."""
        poly = self.polynomial
        if poly.degree() < 1:
            return []
        return root_of_polynomial(self.curve.emb, poly.coeffs)


def division_polynomial(E: EllipticCurve, n: int) -> DivisionPolynomial:
    if n < 1:
        raise ValueError("n must be positive")
    return DivisionPolynomial(E, n, reduced_division_polynomial(E, n))
