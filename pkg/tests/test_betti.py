import mpmath
import pytest

from conftest import I, sqrt
from tordep.algnum import as_algebraic
from tordep.betti import (
    betti_coords,
    elliptic_log,
    frac_distance,
    mult_log_coords,
    periods,
    torsion_betti_row,
    verify_relation_logs,
)
from tordep.effective import dependent_torsion_search
from tordep.elliptic import EllipticCurve, add, neg, point, torsion_catalog


def close(a, b, eps=1e-30):
    return abs(a - b) < eps


def lattice_zero(lattice, u, eps=mpmath.mpf(10) ** -30):
    bc = betti_coords(u, lattice)
    return frac_distance(bc.p) < eps and frac_distance(bc.q) < eps


@pytest.fixture(autouse=True)
def working_precision():
    # test-side arithmetic on logs must match the lattice precision
    with mpmath.workprec(148):
        yield


@pytest.fixture(scope="module")
def L1(E1):
    return periods(E1)


# -- periods --


def test_tau_of_cm_curve(E2):
    L = periods(E2)
    assert close(L.tau, mpmath.mpc(0, 1))


@pytest.mark.parametrize("name", ["E1", "E2", "E3", "Ez"])
def test_tau_in_fundamental_domain(name, request):
    L = periods(request.getfixturevalue(name))
    assert L.tau.imag > 0
    assert abs(L.tau.real) <= 0.5 + 1e-30
    assert abs(L.tau) >= 1 - 1e-30


def test_half_periods_hit_the_roots(E3):
    L = periods(E3)
    halves = (L.omega1 / 2, L.omega2 / 2, (L.omega1 + L.omega2) / 2)
    for e in L.roots:
        assert min(abs(L.wp(h) - e) for h in halves) < 1e-30


def test_embedding_invariance():
    # y^2 = x^3 + (s^2 - 3) x with s = sqrt 2 is y^2 = x^3 - x at both embeddings
    s = sqrt(2, 1.4)
    E = EllipticCurve(0, 0, 0, s * s - 3, 0)
    taus = [periods(E, embedding=k).tau for k in range(2)]
    assert close(taus[0], taus[1])
    assert close(taus[0], mpmath.mpc(0, 1))


# -- elliptic logarithms --


def test_two_torsion_logs_are_half_periods(E2):
    L = periods(E2)
    for T in torsion_catalog(E2, 2):
        u = elliptic_log(E2, L, T.point)
        assert not lattice_zero(L, u)
        assert lattice_zero(L, 2 * u)


def test_log_of_negative(E1, L1):
    for T in torsion_catalog(E1, 5):
        u = elliptic_log(E1, L1, T.point)
        v = elliptic_log(E1, L1, neg(E1, T.point))
        assert lattice_zero(L1, u + v)


def test_order4_point(E1, L1):
    u = elliptic_log(E1, L1, point(1, 1))
    assert lattice_zero(L1, 4 * u)
    assert not lattice_zero(L1, 2 * u)
    row = torsion_betti_row(E1, L1, point(1, 1), 4)
    assert row["frac_ap"] < 1e-30 and row["frac_aq"] < 1e-30


def test_log_is_homomorphism(E3):
    L = periods(E3)
    P, Q = point(0, 0), point(1, 0)
    u = elliptic_log(E3, L, P) + elliptic_log(E3, L, Q)
    w = elliptic_log(E3, L, add(E3, P, Q))
    assert lattice_zero(L, u - w)


def test_betti_coords_examples(L1):
    assert betti_coords(0, L1) == betti_coords(mpmath.mpc(0), L1)
    bc = betti_coords(0, L1)
    assert (bc.p, bc.q) == (0, 0)
    bc = betti_coords(L1.omega1 * L1.tau / 2, L1)
    assert frac_distance(bc.p) < 1e-30 and close(bc.q, mpmath.mpf(1) / 2)


def test_precision_scaling(E1):
    cat = torsion_catalog(E1, 6)
    lo, hi = periods(E1, precision=128), periods(E1, precision=256)
    for T in cat:
        r = [torsion_betti_row(E1, L, T.point, T.order) for L in (lo, hi)]
        r128 = max(r[0]["frac_ap"], r[0]["frac_aq"])
        r256 = max(r[1]["frac_ap"], r[1]["frac_aq"])
        assert r128 < 1e-30
        assert r256 <= max(r128 * mpmath.mpf(10) ** -6, mpmath.mpf(2) ** -200)


# -- multiplicative log coordinates --


def test_mult_log_examples():
    lc = mult_log_coords(1)
    assert lc.r == 0 and lc.s == 0
    lc = mult_log_coords(-1)
    assert close(lc.r, 0) and lc.s == -0.5
    lc = mult_log_coords(I)
    assert close(lc.r, 0) and close(lc.s, 0.25)
    with pytest.raises(ValueError):
        mult_log_coords(0)


def test_verify_relation_examples():
    rep = verify_relation_logs([2, 4], [2, -1])
    assert rep["pass"] and all(e["g"] == 0 for e in rep["embeddings"])
    rep = verify_relation_logs([I, 1 - I], [4, 0])
    assert rep["pass"] and len(rep["embeddings"]) == 2
    assert {abs(e["g"]) for e in rep["embeddings"]} == {1}
    rep = verify_relation_logs([2, 3], [1, -1])
    assert not rep["pass"]
    assert rep["precision"] == 256


def test_verify_relation_rejects_bad_input():
    with pytest.raises(ValueError):
        verify_relation_logs([2, 4], [1])
    with pytest.raises(ValueError):
        verify_relation_logs([as_algebraic(0), 2], [1, 1])


def test_certificates_pass_numerically(E1, E2):
    for E, N in ((E1, 6), (E2, 4)):
        r = dependent_torsion_search(E, ["X", "Y"], "0.1", N)
        assert r.hits
        for h in r.hits:
            b = [h.certificate.zeta_order * v for v in h.certificate.vector]
            rep = verify_relation_logs(h.values, b)
            assert rep["pass"]
            assert max(e["r_residual"] for e in rep["embeddings"]) < 1e-20
