from fractions import Fraction

import pytest

from tordep.algnum import an_sqrt, as_algebraic
from tordep.elliptic import EllipticCurve


def sqrt(q, hint):
    return an_sqrt(as_algebraic(q), hint)


I = sqrt(-1, 1j)
ZETA3 = (as_algebraic(-1) + sqrt(-3, 1.7j)) / 2


def curve_order4():
    """Y^2 = X^3 - X^2 + X, where (1, 1) has order four."""
    return EllipticCurve(0, -1, 0, 1, 0)


def curve_cm_i():
    """Y^2 = X^3 - X."""
    return EllipticCurve(0, 0, 0, -1, 0)


def curve_11a3():
    """Y^2 + Y = X^3 - X^2, with rational 5-torsion."""
    return EllipticCurve(0, -1, 1, 0, 0)


def curve_zeta3():
    """Y^2 = X(X - 1)(X - zeta^2), zeta a primitive cube root of unity."""
    z2 = ZETA3 * ZETA3
    return EllipticCurve(0, -(1 + z2), 0, z2, 0)


FIXTURE_CURVES = {
    "order4": curve_order4,
    "cm_i": curve_cm_i,
    "11a3": curve_11a3,
}


@pytest.fixture(scope="session")
def E1():
    return curve_order4()


@pytest.fixture(scope="session")
def E2():
    return curve_cm_i()


@pytest.fixture(scope="session")
def E3():
    return curve_11a3()


@pytest.fixture(scope="session")
def Ez():
    return curve_zeta3()


def hp(expr):
    """A 50-digit decimal value of an mpmath expression, as a Fraction."""
    import mpmath
    from fractions import Fraction

    with mpmath.workdps(60):
        return Fraction(mpmath.nstr(expr(mpmath), 50, strip_zeros=False))


def encloses(h, value, slack=Fraction(1, 10**40)):
    return h.lower - slack <= value <= h.upper + slack
