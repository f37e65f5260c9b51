"""Numeric verification layer: periods, elliptic logarithms, Betti coordinates
and multiplicative log coordinates.

Everything here is floating point (mpmath) at a per-call working precision.
It cross-checks exact results and is never the source of an exact claim.

Conventions.  The curve is moved to ``y'^2 = 4x'^3 - g2 x' - g3`` with
``x' = x + b2/12``, ``y' = 2y + a1 x + a3``; the lattice ``Z w1 + Z w2`` of
that model satisfies ``x' = P(u)``, ``y' = P'(u)`` (Weierstrass P).
``tau = w2/w1`` is reduced to the standard fundamental domain.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath

from .algnum import AlgebraicNumber, Embedding, as_algebraic, common_embedding
from .algnum.balls import arb_to_fraction
from .algnum.fields import to_embedding
from .elliptic import CurvePoint, EllipticCurve

DEFAULT_PRECISION = 128
DEFAULT_TOLERANCE = 1e-9


class PrecisionError(ArithmeticError):
    """A numeric step did not converge at the requested precision."""


def _mp(q: Fraction) -> mpmath.mpf:
    return mpmath.mpf(q.numerator) / q.denominator


def embedded_value(emb: Embedding, elem, precision: int) -> mpmath.mpc:
    """Value of a field element at ``emb`` as an mpmath complex."""
    z = emb.evaluate(elem, precision + 16)
    return mpmath.mpc(_mp(arb_to_fraction(z.real)), _mp(arb_to_fraction(z.imag)))


def number_value(z: AlgebraicNumber, precision: int) -> mpmath.mpc:
    return embedded_value(z.emb, z.elem, precision)


# ---------------------------------------------------------------------------
# periods


@dataclass(frozen=True)
class PeriodLattice:
    omega1: mpmath.mpc
    omega2: mpmath.mpc
    tau: mpmath.mpc
    g2: mpmath.mpc
    g3: mpmath.mpc
    roots: tuple[mpmath.mpc, mpmath.mpc, mpmath.mpc]
    shift: tuple[mpmath.mpc, mpmath.mpc, mpmath.mpc, mpmath.mpc]  # b2/12, a1, a3
    precision: int

    def wp(self, z) -> mpmath.mpc:
        """Weierstrass P of the lattice."""
        return _wp(z, self.omega1, self.tau)

    def wp_prime(self, z) -> mpmath.mpc:
        return mpmath.diff(lambda t: _wp(t, self.omega1, self.tau), z)

    def reduce(self, u) -> mpmath.mpc:
        p, q = _coords(u, self.omega1, self.tau)
        return (p - mpmath.floor(p)) * self.omega1 + (q - mpmath.floor(q)) * self.omega2


def _wp(z, omega1, tau):
    q = mpmath.exp(1j * mpmath.pi * tau)
    v = mpmath.pi * z / omega1
    t2 = mpmath.jtheta(2, 0, q)
    t3 = mpmath.jtheta(3, 0, q)
    t4v = mpmath.jtheta(4, v, q)
    t1v = mpmath.jtheta(1, v, q)
    k = (mpmath.pi / omega1) ** 2
    return k * (t2**2 * t3**2 * t4v**2 / t1v**2 - (t2**4 + t3**4) / 3)


def _theta_roots(omega1, tau):
    q = mpmath.exp(1j * mpmath.pi * tau)
    t2, t3, t4 = (mpmath.jtheta(n, 0, q) ** 4 for n in (2, 3, 4))
    k = mpmath.pi**2 / (3 * omega1**2)
    return [k * (t3 + t4), k * (t2 - t4), -k * (t2 + t3)]


def _agm(a, b, tol):
    """AGM with the optimal square-root choice at every step."""
    for _ in range(200):
        if abs(a - b) <= tol * abs(a):
            return a
        a1 = (a + b) / 2
        b1 = mpmath.sqrt(a * b)
        if abs(a1 - b1) > abs(a1 + b1):
            b1 = -b1
        a, b = a1, b1
    raise PrecisionError("AGM did not converge")


def _reduce_basis(w1, w2):
    """Basis with tau = w2/w1 in the fundamental domain."""
    for _ in range(1000):
        tau = w2 / w1
        if mpmath.im(tau) < 0:
            w2 = -w2
            tau = -tau
        n = mpmath.floor(mpmath.re(tau) + mpmath.mpf(1) / 2)
        if n:
            w2 = w2 - n * w1
            tau = w2 / w1
        if abs(tau) < 1 - mpmath.mpf(2) ** (-mpmath.mp.prec // 2):
            w1, w2 = w2, -w1
            continue
        return w1, w2, tau
    raise PrecisionError("lattice reduction did not terminate")


def _curve_numbers(E: EllipticCurve, emb: Embedding, precision: int):
    # coefficients are elements of E.field, so any embedding of it applies
    vals = [embedded_value(emb, c, precision) for c in E.a]
    a1, a2, a3, a4, a6 = vals
    b2 = a1**2 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3**2 + 4 * a6
    c4 = b2**2 - 24 * b4
    c6 = -(b2**3) + 36 * b2 * b4 - 216 * b6
    return a1, a3, b2, c4 / 12, c6 / 216


def _coefficient_embedding(E: EllipticCurve, embedding) -> Embedding:
    if embedding is None:
        return E.emb
    if isinstance(embedding, Embedding):
        return embedding
    return E.field.embedding(int(embedding))


def periods(E: EllipticCurve, embedding=None, precision: int = DEFAULT_PRECISION) -> PeriodLattice:
    """Period lattice of ``E`` at a complex embedding of its coefficient field.

    Candidate periods come from optimal AGMs over all orderings and signs of
    the square roots; a candidate basis is accepted only when the theta
    expressions of the lattice reproduce the three roots.
    """
    emb = _coefficient_embedding(E, embedding)
    with mpmath.workprec(precision + 20):
        a1, a3, b2, g2, g3 = _curve_numbers(E, emb, precision + 20)
        roots = mpmath.polyroots([4, 0, -g2, -g3], maxsteps=200, extraprec=precision)
        scale = max(1, max(abs(r) for r in roots))
        tol = mpmath.mpf(2) ** (-(precision + 10))
        cands = []
        for e1, e2, e3 in itertools.permutations(roots):
            for s1, s2 in ((1, 1), (1, -1)):
                a, b = mpmath.sqrt(e1 - e3), s2 * mpmath.sqrt(e1 - e2)
                a = s1 * a
                if abs(a) < tol or abs(b) < tol:
                    continue
                cands.append(mpmath.pi / _agm(a, b, tol))
        cands.sort(key=abs)
        check = mpmath.mpf(2) ** (-(precision // 2))
        for w1 in cands:
            others = [w for w in cands if abs(mpmath.im(w / w1)) > check]
            for w2 in others:
                o1, o2, tau = _reduce_basis(w1, w2)
                th = _theta_roots(o1, tau)
                if all(min(abs(t - r) for r in roots) <= check * scale for t in th):
                    lattice = PeriodLattice(
                        +o1, +o2, +tau, g2, g3, tuple(roots), (b2 / 12, a1, a3, 0), precision
                    )
                    return lattice
    raise PrecisionError("no candidate period basis passed the theta check")


# ---------------------------------------------------------------------------
# elliptic logarithm and coordinates


def _coords(u, omega1, tau):
    w = u / omega1
    q = mpmath.im(w) / mpmath.im(tau)
    p = mpmath.re(w) - q * mpmath.re(tau)
    return p, q


def _point_values(P: CurvePoint, precision: int):
    emb = common_embedding([P.x.emb, P.y.emb])
    x = embedded_value(emb, to_embedding(P.x.elem, P.x.emb, emb), precision)
    y = embedded_value(emb, to_embedding(P.y.elem, P.y.emb, emb), precision)
    return x, y


def elliptic_log(E: EllipticCurve, lattice: PeriodLattice, P: CurvePoint) -> mpmath.mpc:
    """``u`` with ``(P(u), P'(u))`` equal to the short-model image of ``P``,
    reduced into the fundamental parallelogram."""
    if P.is_infinity:
        return mpmath.mpc(0)
    prec = lattice.precision
    with mpmath.workprec(prec + 20):
        x, y = _point_values(P, prec + 20)
        s, a1, a3, _ = lattice.shift
        xs = x + s
        ys = 2 * y + a1 * x + a3
        e1, e2, e3 = lattice.roots
        tiny = mpmath.mpf(2) ** (-(prec // 2))
        scale = max(1, abs(xs))
        two_torsion = abs(ys) <= tiny * scale**1.5
        if two_torsion:
            # the integral is square-root sensitive at a root; use the root itself
            xs = min(lattice.roots, key=lambda e: abs(e - xs))
        u = mpmath.elliprf(xs - e1, xs - e2, xs - e3)
        if abs(lattice.wp(u) - xs) > mpmath.mpf(10) ** -6 * scale:
            u = _search_preimage(lattice, xs)
        if not two_torsion:
            if abs(lattice.wp_prime(u) - ys) > abs(lattice.wp_prime(u) + ys):
                u = -u
            u = _newton(lattice, u, xs, ys)
        return +lattice.reduce(u)


def _newton(lattice: PeriodLattice, u, xs, ys):
    tol = mpmath.mpf(2) ** (-(lattice.precision + 8)) * max(1, abs(xs))
    for _ in range(60):
        f = lattice.wp(u) - xs
        if abs(f) <= tol:
            return u
        u = u - f / lattice.wp_prime(u)
    raise PrecisionError("Newton refinement of the elliptic logarithm did not converge")


def _search_preimage(lattice: PeriodLattice, xs):
    """Coarse grid over the parallelogram, then Newton; used when the
    Carlson integral lands on another branch."""
    best, best_err = None, None
    n = 24
    for i in range(n):
        for j in range(n):
            z = ((i + 0.5) / n) * lattice.omega1 + ((j + 0.5) / n) * lattice.omega2
            err = abs(lattice.wp(z) - xs)
            if best_err is None or err < best_err:
                best, best_err = z, err
    return best


@dataclass(frozen=True)
class BettiCoords:
    p: float
    q: float


def betti_coords(u, lattice: PeriodLattice) -> BettiCoords:
    """``(p, q)`` in ``[0, 1)^2`` with ``u = (p + q tau) w1`` modulo the lattice."""
    with mpmath.workprec(lattice.precision + 20):
        p, q = _coords(u, lattice.omega1, lattice.tau)
        p, q = p - mpmath.floor(p), q - mpmath.floor(q)
        # a value just below an integer can round up to 1
        if p >= 1:
            p -= 1
        if q >= 1:
            q -= 1
        return BettiCoords(+p, +q)


def frac_distance(t) -> mpmath.mpf:
    """Distance from ``t`` to the nearest integer."""
    return abs(t - mpmath.nint(t))


@dataclass(frozen=True)
class LogCoords:
    r: mpmath.mpf
    s: mpmath.mpf


def _value_at(z: AlgebraicNumber, embedding, precision: int) -> mpmath.mpc:
    if embedding is None:
        emb = z.emb
    elif isinstance(embedding, Embedding):
        emb = embedding
    else:
        emb = z.field.embedding(int(embedding))
    elem = z.elem if emb is z.emb or emb.field is z.field else to_embedding(z.elem, z.emb, emb)
    return embedded_value(emb, elem, precision)


def _log_coords(v: mpmath.mpc) -> LogCoords:
    r = mpmath.log(abs(v))
    s = mpmath.arg(v) / (2 * mpmath.pi)
    if s >= mpmath.mpf(1) / 2:
        s -= 1
    return LogCoords(r, s)


def mult_log_coords(z, embedding=None, precision: int = DEFAULT_PRECISION) -> LogCoords:
    """``r = log|z|`` and ``s = arg(z)/2pi`` in ``[-1/2, 1/2)`` at an embedding."""
    z = as_algebraic(z)
    if z.is_zero():
        raise ValueError("log coordinates of zero")
    with mpmath.workprec(precision + 20):
        return _log_coords(_value_at(z, embedding, precision + 20))


def verify_relation_logs(
    values: Sequence,
    b: Sequence[int],
    tolerance: float = DEFAULT_TOLERANCE,
    precision: int = DEFAULT_PRECISION,
    retry: bool = True,
) -> dict:
    """Check ``sum b_j r_j = 0`` and ``sum b_j s_j = g`` (an integer) at every
    embedding of the common field.

    On failure the check is repeated once at doubled precision.
    """
    vals = [as_algebraic(v) for v in values]
    if len(vals) != len(b):
        raise ValueError("values and relation vector differ in length")
    if any(v.is_zero() for v in vals):
        raise ValueError("values must be nonzero")
    emb = common_embedding(v.emb for v in vals)
    elems = [to_embedding(v.elem, v.emb, emb) for v in vals]
    rows = []
    with mpmath.workprec(precision + 20):
        for idx, sigma in enumerate(emb.field.embeddings()):
            r_sum = mpmath.mpf(0)
            s_sum = mpmath.mpf(0)
            for e, bj in zip(elems, b):
                lc = _log_coords(embedded_value(sigma, e, precision + 20))
                r_sum += bj * lc.r
                s_sum += bj * lc.s
            g = int(mpmath.nint(s_sum))
            s_res = abs(s_sum - g)
            ok = abs(r_sum) < tolerance and s_res < tolerance
            rows.append(
                {
                    "embedding_index": idx,
                    "r_residual": float(abs(r_sum)),
                    "s_sum": float(s_sum),
                    "s_residual": float(s_res),
                    "g": g,
                    "pass": bool(ok),
                }
            )
    report = {"pass": all(r["pass"] for r in rows), "precision": precision, "embeddings": rows}
    if not report["pass"] and retry:
        again = verify_relation_logs(values, b, tolerance, 2 * precision, retry=False)
        if again["pass"]:
            return again
        report = again
    return report


# ---------------------------------------------------------------------------
# torsion sweep used by the CLI and tests


def torsion_betti_row(E: EllipticCurve, lattice: PeriodLattice, P: CurvePoint, order: int) -> dict:
    u = elliptic_log(E, lattice, P)
    bc = betti_coords(u, lattice)
    with mpmath.workprec(lattice.precision + 20):
        fa = frac_distance(order * bc.p)
        fb = frac_distance(order * bc.q)
    return {"order": order, "p": bc.p, "q": bc.q, "frac_ap": fa, "frac_aq": fb}
