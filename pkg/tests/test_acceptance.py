"""Acceptance checks.  Each criterion prints one PASS/FAIL line and asserts."""

import itertools
import json
import math
import random
import time
from fractions import Fraction

import mpmath
import pytest
from flint import fmpz_poly

from conftest import FIXTURE_CURVES, I, hp, sqrt
from tordep.algnum import (
    AlgebraicNumber,
    ComplexBall,
    as_algebraic,
    is_root_of_unity,
    root_of_polynomial,
    weil_height,
)
from tordep.algnum.height import mahler_measure_log
from tordep.betti import periods, torsion_betti_row, verify_relation_logs
from tordep.cli import main
from tordep.effective import dependent_torsion_search, eval_function, height_budget, parse_functions
from tordep.elliptic import INFINITY, division_polynomial, point, scalar_mul, torsion_catalog, torsion_points
from tordep.multdep import (
    IndependenceCertificate,
    are_dependent,
    box_count,
    find_relation,
    masser_gm_bound,
    masser_gm_value,
    masser_lattice_bound,
    masser_lattice_value,
    power_product,
)

TOL = 1e-9
RATIONALS = as_algebraic(1).emb


@pytest.fixture
def verdict(capsys):
    def report(k, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {k:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, detail

    return report


def zeta(m):
    z = complex(math.cos(2 * math.pi / m), math.sin(2 * math.pi / m))
    return AlgebraicNumber.from_root(fmpz_poly.cyclotomic(m), ComplexBall.around(z, 1e-3))


@pytest.fixture(scope="module")
def fixture_runs():
    """depsearch over the fixture curves, shared by criteria 3 and 10."""
    runs = []
    for fs in ("X,Y", "X*Y-3,1/(X-1)"):
        for name, N in (("order4", 8), ("cm_i", 4), ("11a3", 5)):
            E = FIXTURE_CURVES[name]()
            runs.append((name, E, N, fs, dependent_torsion_search(E, fs.split(","), "0.1", N)))
    return runs


def cli_json(tmp_path, args, name):
    out = tmp_path / name
    code = main(args + ["--out", str(out)])
    return code, json.loads(out.read_text())


def test_criterion_01_order_four_example(tmp_path, verdict):
    curve = tmp_path / "curve.json"
    curve.write_text(json.dumps({"a1": "0", "a2": "-1", "a3": "0", "a4": "1", "a6": "0"}))
    t = time.perf_counter()
    c1, tor = cli_json(tmp_path, ["torsion", "--curve", str(curve), "--nmax", "4"], "t.json")
    c2, dep = cli_json(
        tmp_path,
        ["depsearch", "--curve", str(curve), "--nmax", "4", "--functions", "X,Y", "--eps", "0.1"],
        "d.json",
    )
    elapsed = time.perf_counter() - t
    target = {"x": "1", "y": "1"}
    orders = [p["order"] for p in tor["points"] if p["point"] == target]
    hits = [h for h in dep["hits"] if h["point"] == target]
    exact = False
    if hits:
        c = hits[0]["certificate"]
        exact = power_product([as_algebraic(1), as_algebraic(1)], [c["zeta_order"] * a for a in c["vector"]]).is_one()
    ok = c1 == c2 == 0 and orders == [4] and len(hits) == 1 and exact and elapsed < 10
    verdict(1, ok, f"(1,1) order {orders}, hit {bool(hits)}, certificate exact {exact}, {elapsed:.2f}s < 10s")


def test_criterion_02_root_of_unity_example(verdict):
    E = FIXTURE_CURVES["cm_i"]()
    t = time.perf_counter()
    r = dependent_torsion_search(E, ["X", "Y"], "0.1", 4)
    elapsed = time.perf_counter() - t
    P = point(I, 1 - I)
    hit = [h for h in r.hits if h.point.point == P]
    good_hit = bool(hit) and hit[0].point.order == 4 and hit[0].certificate.vector == (1, 0)
    good_hit = good_hit and hit[0].certificate.zeta_order == 4 and hit[0].certificate.verify(hit[0].values)
    two = [e for e in r.excluded if e.point.order == 2]
    y_vanished = len(two) == 3 and all((1, "vanished") in e.reasons for e in two)
    ok = good_hit and y_vanished and elapsed < 30
    verdict(2, ok, f"(i,1-i) order 4 vector (1,0) zeta 4: {good_hit}; 2-torsion Y-vanished: {y_vanished}; {elapsed:.2f}s < 30s")


def test_criterion_03_certificate_soundness(fixture_runs, verdict):
    total = exact = numeric = 0
    worst = 0.0
    for _, _, _, _, r in fixture_runs:
        for h in r.hits:
            total += 1
            b = [h.certificate.zeta_order * a for a in h.certificate.vector]
            exact += power_product(h.values, b).is_one()
            rep = verify_relation_logs(h.values, b, tolerance=TOL, precision=128, retry=False)
            numeric += rep["pass"]
            for e in rep["embeddings"]:
                worst = max(worst, e["r_residual"], e["s_residual"])
    ok = total > 0 and exact == total and numeric == total and worst < TOL
    verdict(3, ok, f"{total} certificates: {exact} exact, {numeric} numeric at 128 bits, worst residual {worst:.1e}")


def _table():
    cases = []
    for n, B, eps in itertools.product((1, 2, 3, 4, 5), (Fraction(1, 2), Fraction(7, 3)), (Fraction(1, 10), Fraction(2))):
        cases.append((n, B, eps))
    return cases[:20]


def test_criterion_04_exponent_bounds(verdict):
    cases = _table()
    bad = []
    for n, B, eps in cases:
        expected = Fraction(n * B, eps) ** (n - 1)
        if masser_lattice_value(n, B, eps) != expected or masser_lattice_bound(n, B, eps) != max(1, math.ceil(expected)):
            bad.append(("lattice", n, B, eps))
        omega, h, eta = 2 * n + 2, B, eps
        expected = n ** (n - 1) * omega * Fraction(h, eta) ** (n - 1)
        if n >= 2 and (
            masser_gm_value(n, omega, h, eta) != expected or masser_gm_bound(n, omega, h, eta) != math.ceil(expected)
        ):
            bad.append(("gm", n, B, eps))
        for lam in (Fraction(2), Fraction(10), Fraction(1, 3)):
            if masser_lattice_bound(n, lam * B, lam * eps) != masser_lattice_bound(n, B, eps):
                bad.append(("ratio", n, B, eps, lam))
    verdict(4, not bad and len(cases) == 20, f"{len(cases)}-case table, mismatches {bad}")


@pytest.mark.xfail(
    strict=True,
    reason="0.48121182 is log M(X^2 - X - 1) = log(phi); the degree-normalized height of phi is 0.24060591",
)
def test_criterion_05_height_engine(verdict):
    failures = []
    if weil_height(as_algebraic(1)).upper != 0:
        failures.append("h(1)")
    for m in range(1, 31):
        h = weil_height(zeta(m))
        if not (h.lower <= 0 <= h.upper and h.upper < Fraction(1, 10**15)):
            failures.append(f"h(zeta_{m})")
    h2 = weil_height(as_algebraic(2))
    log2 = hp(lambda mp: mp.log(2))
    if not (h2.lower <= log2 <= h2.upper and h2.width < Fraction(1, 10**10)):
        failures.append("h(2)")
    phi = (1 + sqrt(5, 2.2)) / 2
    hphi = weil_height(phi)
    # oracle: the Mahler measure taken directly from the minimal polynomial
    lo, hi = mahler_measure_log(phi.minpoly)
    target = Fraction("0.48121182")
    oracle_ok = lo <= Fraction("0.481211825059604") and hi >= Fraction("0.481211825059603")
    if not (hphi.lower <= target <= hphi.upper + Fraction(1, 10**8)):
        failures.append(f"h(phi) enclosure [{float(hphi.lower):.8f}, {float(hphi.upper):.8f}] misses 0.48121182")
    rng = random.Random(5)
    s2, s3 = sqrt(2, 1.4), sqrt(3, 1.7)
    bad_pairs = 0
    for _ in range(500):
        a = Fraction(rng.randint(-40, 40), rng.randint(1, 12)) + rng.randint(-5, 5) * s2 + rng.randint(-3, 3) * I
        b = Fraction(rng.randint(-40, 40), rng.randint(1, 12)) + rng.randint(-5, 5) * s3
        if a.is_zero() or b.is_zero():
            continue
        if weil_height(a * b).lower > weil_height(a).upper + weil_height(b).upper:
            bad_pairs += 1
    if bad_pairs:
        failures.append(f"subadditivity on {bad_pairs} pairs")
    verdict(5, not failures and oracle_ok, f"Mahler oracle log M = {float(lo):.8f}; failures: {failures or 'none'}")


def test_criterion_06_kronecker(verdict):
    wrong = [m for m in range(1, 31) if is_root_of_unity(zeta(m)) != m]
    rng = random.Random(6)
    cyclo = {tuple(int(c) for c in fmpz_poly.cyclotomic(m).coeffs()) for m in range(1, 500)}
    tested = 0
    misfires = 0
    while tested < 50:
        d = rng.randint(1, 6)
        f = fmpz_poly([rng.randint(-4, 4) for _ in range(d)] + [1])
        _, factors = f.factor()
        if len(factors) != 1 or factors[0][1] != 1 or tuple(int(c) for c in f.coeffs()) in cyclo:
            continue
        tested += 1
        for alpha in root_of_polynomial(RATIONALS, [int(c) for c in f.coeffs()]):
            misfires += is_root_of_unity(alpha) is not None
    verdict(6, not wrong and misfires == 0, f"Phi_m for m <= 30 wrong: {wrong}; {tested} non-cyclotomic misfires: {misfires}")


def test_criterion_07_division_polynomials(verdict):
    problems = []
    for name, make in FIXTURE_CURVES.items():
        E = make()
        for n in range(2, 8):
            roots = set(division_polynomial(E, n).roots())
            killed = [T.point for d in range(2, n + 1) if n % d == 0 for T in torsion_points(E, d)]
            if any(scalar_mul(E, n, P) != INFINITY for P in killed):
                problems.append((name, n, "nP != O"))
            if roots != {P.x for P in killed}:
                problems.append((name, n, "root set"))
            if 1 + len(killed) > n * n:
                problems.append((name, n, "#E[n]"))
            if 1 + len(killed) != n * n:
                problems.append((name, n, f"#E[n] = {1 + len(killed)}"))
    verdict(7, not problems, f"{len(FIXTURE_CURVES)} curves, n = 2..7, problems: {problems or 'none'}")


def test_criterion_08_betti_integrality(verdict):
    worst128 = 0
    bad_scaling = []
    count = 0
    for name, make in FIXTURE_CURVES.items():
        E = make()
        lo, hi = periods(E, precision=128), periods(E, precision=256)
        for T in torsion_catalog(E, 10):
            a = torsion_betti_row(E, lo, T.point, T.order)
            b = torsion_betti_row(E, hi, T.point, T.order)
            r128 = max(a["frac_ap"], a["frac_aq"])
            r256 = max(b["frac_ap"], b["frac_aq"])
            worst128 = max(worst128, r128)
            # an exact zero at 128 bits has nothing left to shrink
            if r256 > max(r128 * mpmath.mpf(10) ** -6, mpmath.mpf(2) ** -250):
                bad_scaling.append((name, T.order))
            count += 1
    ok = worst128 < TOL and not bad_scaling
    verdict(8, ok, f"{count} points of order <= 10, worst residual {float(worst128):.1e} at 128 bits, scaling failures {bad_scaling[:5]}")


def test_criterion_09_independence(verdict):
    c = are_dependent([as_algebraic(2), as_algebraic(3)])
    indep = isinstance(c, IndependenceCertificate) and c.exhausted
    corpus = [
        [2, 3],
        [2, 4],
        [6, 2, 3],
        [I, 1 - I],
        [-1, 5],
        [Fraction(1, 2), 8],
        [1 + sqrt(2, 1.4), 1 - sqrt(2, 1.4)],
        [sqrt(2, 1.4), as_algebraic(2)],
    ]
    boxes = 0
    mismatched = []
    for vals in corpus:
        alphas = [as_algebraic(v) for v in vals]
        M = 1
        while box_count(len(alphas), M) <= 10**4 and M <= 12:
            boxes += 1
            if find_relation(alphas, M, prefilter=True) != find_relation(alphas, M, prefilter=False):
                mismatched.append((vals, M))
            M += 1
    verdict(9, indep and not mismatched, f"(2,3) independent exhausted: {indep}; {boxes} boxes, prefilter mismatches {mismatched}")


def test_criterion_10_budget_soundness(fixture_runs, verdict):
    evaluated = 0
    breaches = []
    for name, E, N, fs, r in fixture_runs:
        funcs = parse_functions(fs)
        _, _, per, B = height_budget(E, funcs)
        if r.B != B:
            breaches.append((name, "B"))
        for T in torsion_catalog(E, N):
            for f, Bi in zip(funcs, per):
                v = eval_function(f, T.point)
                if v.kind != "value":
                    continue
                evaluated += 1
                if weil_height(v.value).upper > Bi:
                    breaches.append((name, f.text, T.order))
    verdict(10, evaluated > 0 and not breaches, f"{evaluated} evaluated values, breaches {breaches or 'none'}")
