"""Exponent-box bounds for multiplicative relations.

All bounds are computed in exact rational arithmetic.  Inputs that are
floats are converted exactly; ceilings are taken at the very end, so a
returned bound only ever over-approximates the real-valued formula.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational, Real

from flint import arb, ctx

from ..algnum.balls import arb_lower
from ..algnum.height import totients_up_to


def _exact(x: Real | str, name: str) -> Fraction:
    if isinstance(x, str):
        q = Fraction(x)
    elif isinstance(x, (Rational, Fraction)):
        q = Fraction(x)
    else:
        q = Fraction(float(x))
    if q <= 0:
        raise ValueError(f"{name} must be positive")
    return q


def masser_lattice_value(n: int, B, eps) -> Fraction:
    """``(n B / eps)^(n-1)`` before rounding."""
    if n < 1:
        raise ValueError("n must be at least 1")
    B = _exact(B, "B")
    eps = _exact(eps, "eps")
    return (n * B / eps) ** (n - 1)


def masser_lattice_bound(n: int, B, eps) -> int:
    """Sup-norm box ``ceil((n B / eps)^(n-1))`` guaranteed to contain a
    nonzero element of the relation lattice when one exists."""
    return max(1, math.ceil(masser_lattice_value(n, B, eps)))


def masser_gm_value(n: int, omega: int, h, eta) -> Fraction:
    """``n^(n-1) omega (h / eta)^(n-1)`` before rounding."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if omega < 2:
        raise ValueError("omega must be at least 2")
    h = _exact(h, "h")
    eta = _exact(eta, "eta")
    return Fraction(n) ** (n - 1) * omega * (h / eta) ** (n - 1)


def masser_gm_bound(n: int, omega: int, h, eta) -> int:
    return math.ceil(masser_gm_value(n, omega, h, eta))


def omega_upper_bound(d: int) -> int:
    """``2 max{m : phi(m) <= d}``, an upper bound for the number of roots of
    unity in a number field of degree ``d``."""
    if d < 1:
        raise ValueError("d must be positive")
    # phi(m) >= sqrt(m/2), so phi(m) <= d forces m <= 2 d^2
    limit = 2 * d * d + 2
    phis = totients_up_to(limit)
    return 2 * max(m for m in range(1, limit + 1) if phis[m] <= d)


def eta_lower_bound(d: int, override=None) -> Fraction:
    """Certified lower bound for ``h(alpha)`` over nonzero non-roots of unity
    of degree at most ``d``.

    ``d = 1`` gives ``log 2``.  For ``d >= 2`` we use the Blanksby-Montgomery
    inequality ``M(alpha) > 1 + 1/(52 d log(6 d))``, divided by ``d`` to pass
    from the Mahler measure to the absolute height.  Both values are returned
    as rational lower endpoints of ball enclosures.
    """
    if d < 1:
        raise ValueError("d must be positive")
    if override is not None:
        return _exact(override, "eta override")
    with ctx.workprec(128):
        if d == 1:
            val = arb(2).log()
        else:
            val = (1 + 1 / (52 * d * arb(6 * d).log())).log() / d
    return arb_lower(val)
