import json
from fractions import Fraction

import pytest

from conftest import I
from tordep.algnum import an_equals, as_algebraic
from tordep.elliptic import (
    INFINITY,
    CurvePoint,
    EllipticCurve,
    SingularCurveError,
    add,
    discriminant,
    division_polynomial,
    j_invariant,
    neg,
    on_curve,
    order_of,
    point,
    scalar_mul,
    torsion_catalog,
    torsion_points,
    two_torsion_cubic,
)


# -- invariants of the curve --


def test_discriminant_and_j(E2):
    assert an_equals(discriminant(E2), as_algebraic(64))
    assert an_equals(j_invariant(E2), as_algebraic(1728))


def test_order4_curve_nonsingular(E1):
    assert an_equals(discriminant(E1), as_algebraic(-48))


def test_singular_curve_rejected():
    with pytest.raises(SingularCurveError):
        EllipticCurve(0, -1, 0, 0, 0)  # Y^2 = X^3 - X^2
    with pytest.raises(SingularCurveError):
        EllipticCurve.short(0, 0)


def test_curve_json_round_trip(E1, Ez):
    for E in (E1, Ez):
        data = json.loads(json.dumps(E.to_json()))
        F = EllipticCurve.from_json(data)
        assert all(an_equals(a, b) for a, b in zip(E.coefficients(), F.coefficients()))
    assert EllipticCurve.from_json({"short": ["-1", "0"]}).to_json() == EllipticCurve(0, 0, 0, -1, 0).to_json()


# -- group law --


def test_doubling_example(E1):
    P = point(1, 1)
    assert on_curve(E1, P)
    assert scalar_mul(E1, 2, P) == point(0, 0)
    assert scalar_mul(E1, 0, P) == INFINITY
    assert add(E1, P, neg(E1, P)) == INFINITY
    assert add(E1, INFINITY, P) == P


def test_long_model_negation(E3):
    P = point(0, 0)
    assert on_curve(E3, P)
    Q = neg(E3, P)
    assert Q == point(0, -1)
    assert add(E3, P, Q) == INFINITY
    assert order_of(E3, P, 10) == 5


def test_orders(E1, E2):
    assert order_of(E1, point(1, 1), 10) == 4
    assert order_of(E2, point(0, 0), 10) == 2
    assert order_of(E2, point(I, 1 - I), 10) == 4
    assert scalar_mul(E2, 2, point(I, 1 - I)) == point(0, 0)


def test_order_cap(E1):
    assert order_of(E1, point(1, 1), 3) is None
    assert order_of(E1, INFINITY, 1) == 1


def test_non_torsion_point():
    # y^2 = x^3 - 2 has the point (3, 5) of infinite order
    E = EllipticCurve(0, 0, 0, 0, -2)
    assert order_of(E, point(3, 5), 30) is None


def test_point_json_round_trip(E2):
    P = point(I, 1 - I)
    assert CurvePoint.from_json(json.loads(json.dumps(P.to_json()))) == P
    assert CurvePoint.from_json("infinity") == INFINITY
    assert point(Fraction(1, 2), 3).to_json() == {"x": "1/2", "y": "3"}


# -- division polynomials --


def test_psi1(E2):
    assert division_polynomial(E2, 1).degree() == 0


def test_psi2_roots(E2):
    roots = division_polynomial(E2, 2).roots()
    assert xs_rational(roots) == {0, 1, -1}
    assert two_torsion_cubic(E2).degree() == 3


def xs_rational(roots):
    return {r.as_fraction() for r in roots}


@pytest.mark.parametrize("n, degree", [(3, 4), (4, 9), (5, 12), (6, 19)])
def test_division_polynomial_degrees(E1, n, degree):
    # (n^2 - 1)/2 distinct x-coordinates when n is odd, (n^2 + 2)/2 when even
    assert division_polynomial(E1, n).degree() == degree
    assert len(division_polynomial(E1, n).roots()) == degree


def test_psi3_roots_are_3_torsion(E2):
    for x in division_polynomial(E2, 3).roots():
        T = [t for t in torsion_points(E2, 3) if t.point.x == x]
        assert len(T) == 2
        for t in T:
            assert scalar_mul(E2, 3, t.point) == INFINITY


# -- torsion enumeration --


def test_torsion_points_order4(E1):
    pts = [t.point for t in torsion_points(E1, 4)]
    assert point(1, 1) in pts and point(1, -1) in pts


def test_two_torsion_of_cm_curve(E2):
    pts = {(t.point.x.as_fraction(), t.point.y.as_fraction()) for t in torsion_points(E2, 2)}
    assert pts == {(0, 0), (1, 0), (-1, 0)}


def test_catalog_edges(E1, E2):
    assert torsion_catalog(E1, 1) == []
    assert len(torsion_catalog(E2, 2)) == 3
    orders = {t.order for t in torsion_catalog(E1, 4)}
    assert orders == {2, 3, 4}


def test_catalog_counts(E1):
    # exact order n contributes n^2 prod(1 - 1/p^2) points
    counts = {n: len(torsion_points(E1, n)) for n in range(2, 9)}
    assert counts == {2: 3, 3: 8, 4: 12, 5: 24, 6: 24, 7: 48, 8: 48}


def test_catalog_sorted_and_certified(E1):
    cat = torsion_catalog(E1, 6)
    assert [t.order for t in cat] == sorted(t.order for t in cat)
    for t in cat:
        assert on_curve(E1, t.point)
        assert order_of(E1, t.point, t.order) == t.order


def test_torsion_over_number_field(Ez):
    a4 = Ez.coefficients()[3]  # zeta^2
    two = torsion_points(Ez, 2)
    assert len(two) == 3
    four = torsion_points(Ez, 4)
    assert len(four) == 12
    for t in four:
        assert on_curve(Ez, t.point)
    # x = zeta^4 = zeta appears at order four, with y = +-sqrt(3)
    z = a4 * a4
    ys = [complex(t.point.y) for t in four if t.point.x == z]
    assert len(ys) == 2
    assert [y.real for y in sorted(ys, key=lambda y: y.real)] == pytest.approx([-(3**0.5), 3**0.5])
    assert all(abs(y.imag) < 1e-12 for y in ys)


def test_sqrt_branch_dedup(E2):
    pts = [t.point for t in torsion_points(E2, 4)]
    assert len(pts) == len(set(pts)) == 12
    assert point(I, 1 - I) in pts
    assert point(I, -1 + I) in pts
