import math
from fractions import Fraction

import pytest
from flint import fmpz_poly

from conftest import I, ZETA3, encloses, hp, sqrt
from tordep.algnum import (
    AlgebraicNumber,
    AmbiguousBranch,
    ComplexBall,
    an_add,
    an_equals,
    an_from_rational,
    an_inv,
    an_mul,
    an_neg,
    an_sqrt,
    as_algebraic,
    conjugates,
    is_root_of_unity,
    weil_height,
)
from tordep.algnum.height import mahler_measure_log


def coeffs(p):
    return [int(c) for c in p.coeffs()]


def cyclotomic(m):
    return fmpz_poly.cyclotomic(m)


def root_of(poly, z):
    return AlgebraicNumber.from_root(poly, ComplexBall.around(z, 1e-3))


# -- construction --


@pytest.mark.parametrize(
    "q, minpoly",
    [(1, [-1, 1]), (-1, [1, 1]), (Fraction(2, 3), [-2, 3])],
)
def test_from_rational_minpoly(q, minpoly):
    a = an_from_rational(q)
    assert coeffs(a.minpoly) == minpoly
    assert a.isolator.contains_point(Fraction(q), Fraction(0))


def test_from_rational_string():
    assert an_equals(an_from_rational("-7/4"), as_algebraic(Fraction(-7, 4)))


# -- field operations --


def test_sqrt2_cancels():
    s = sqrt(2, 1.4)
    assert an_add(s, an_neg(s)).is_zero()


def test_sqrt2_squared():
    s = sqrt(2, 1.4)
    assert an_equals(an_mul(s, s), as_algebraic(2))


def test_inverse_of_two():
    h = an_inv(as_algebraic(2))
    assert coeffs(h.minpoly) == [-1, 2]


def test_inverse_of_zero_rejected():
    with pytest.raises(ZeroDivisionError):
        an_inv(as_algebraic(0))


def test_equality_across_constructions():
    s = sqrt(2, 1.4)
    t = an_mul(an_inv(s), as_algebraic(2))
    assert an_equals(s, t)
    assert not an_equals(s, an_neg(s))
    assert an_equals(as_algebraic(1), an_from_rational(1))


def test_mixed_fields():
    # sqrt2 + sqrt3 has degree 4
    s = sqrt(2, 1.4) + sqrt(3, 1.7)
    assert s.degree == 4
    assert coeffs(s.minpoly) == [1, 0, -10, 0, 1]
    assert an_equals((s * s - 5) ** 2, as_algebraic(24))


def test_degree_bound_for_sum():
    a, b = sqrt(2, 1.4), ZETA3
    assert an_add(a, b).degree <= a.degree * b.degree


# -- square roots --


def test_sqrt_examples():
    assert an_equals(an_sqrt(as_algebraic(4), 1), as_algebraic(2))
    s = an_sqrt(as_algebraic(2), 1.0)
    assert coeffs(s.minpoly) == [-2, 0, 1]
    assert complex(s).real > 0
    r = an_sqrt(as_algebraic(-2) * I, 1 - 1j)
    assert an_equals(r, 1 - I)


def test_sqrt_ball_hint_must_separate():
    with pytest.raises(AmbiguousBranch):
        an_sqrt(as_algebraic(2), ComplexBall.around(0, 5))


def test_sqrt_equidistant_hint_rejected():
    with pytest.raises(AmbiguousBranch):
        an_sqrt(as_algebraic(2), 1j)


# -- conjugates --


def test_conjugates_sqrt2():
    balls = conjugates(sqrt(2, 1.4), 64)
    vals = sorted(b.center_complex().real for b in balls)
    assert vals == pytest.approx([-math.sqrt(2), math.sqrt(2)])
    for b in balls:
        assert b.radius <= Fraction(1, 2**32)


def test_conjugates_rational():
    (b,) = conjugates(as_algebraic(5), 64)
    assert b.center_complex() == 5


def test_conjugates_phi5_on_unit_circle():
    z = root_of(cyclotomic(5), complex(math.cos(2 * math.pi / 5), math.sin(2 * math.pi / 5)))
    balls = conjugates(z, 64)
    assert len(balls) == 4
    for b in balls:
        assert abs(b.center_complex()) == pytest.approx(1, abs=1e-15)
    for i in range(4):
        for j in range(i):
            assert not balls[i].overlaps(balls[j])


# -- heights --


def test_height_of_one_and_two():
    assert weil_height(as_algebraic(1)).upper == 0
    h2 = weil_height(as_algebraic(2))
    assert encloses(h2, hp(lambda m: m.log(2)))
    assert h2.width < Fraction(1, 10**10)


def test_height_of_zero_is_zero():
    assert weil_height(as_algebraic(0)).upper == 0
    assert is_root_of_unity(as_algebraic(0)) is None


def test_golden_ratio_height_and_mahler_measure():
    # h is normalized by the degree: h(phi) = log(phi)/2, log M = log(phi)
    phi = (1 + sqrt(5, 2.2)) / 2
    logphi = hp(lambda m: m.log((1 + m.sqrt(5)) / 2))
    assert encloses(weil_height(phi), logphi / 2)
    lo, hi = mahler_measure_log(phi.minpoly)
    assert lo - Fraction(1, 10**40) <= logphi <= hi + Fraction(1, 10**40)
    assert float(lo) == pytest.approx(0.48121182505960347, abs=1e-12)


def test_height_of_inverse():
    a = (3 + sqrt(2, 1.4)) / 5
    h, g = weil_height(a), weil_height(a.inverse())
    assert abs(h.upper - g.upper) <= h.width + g.width


def test_height_rational():
    h = weil_height(as_algebraic(Fraction(-9, 4)))
    assert encloses(h, hp(lambda m: m.log(9)))


# -- roots of unity --


@pytest.mark.parametrize("value, order", [(1, 1), (-1, 2)])
def test_root_of_unity_rational(value, order):
    assert is_root_of_unity(as_algebraic(value)) == order


def test_root_of_unity_phi5():
    z = root_of(cyclotomic(5), complex(math.cos(2 * math.pi / 5), math.sin(2 * math.pi / 5)))
    assert is_root_of_unity(z) == 5


def test_not_root_of_unity():
    assert is_root_of_unity(as_algebraic(2)) is None
    # (3 + 4i)/5 has modulus 1 but is not an algebraic integer
    assert is_root_of_unity((3 + 4 * I) / 5) is None
    assert is_root_of_unity(I) == 4
    assert is_root_of_unity(ZETA3) == 3
    assert is_root_of_unity(-ZETA3) == 6


# -- serialization --


def test_json_round_trip():
    for a in (as_algebraic(Fraction(-3, 7)), sqrt(2, -1.4), 1 - I, ZETA3):
        data = a.to_json()
        assert set(data) == {"minpoly", "center", "radius"}
        assert all(isinstance(c, str) for c in data["minpoly"])
        assert an_equals(AlgebraicNumber.from_json(data), a)
