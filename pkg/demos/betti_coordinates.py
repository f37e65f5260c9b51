"""
Torsion points sit on a rational grid of the period lattice
===========================================================

The elliptic logarithm u of a point of order a has coordinates (p, q) in
the basis (1, tau) of the normalized lattice with a p and a q integral.
Here the residuals are measured at 128 and 256 bits for the 5-torsion of
y^2 + y = x^3 - x^2.
"""

import mpmath

from tordep.betti import elliptic_log, periods, torsion_betti_row
from tordep.elliptic import EllipticCurve, torsion_catalog

E = EllipticCurve(0, -1, 1, 0, 0)
L = periods(E, precision=128)
print("tau =", mpmath.nstr(L.tau, 20))

cat = torsion_catalog(E, 5)
hi = periods(E, precision=256)
for T in cat:
    if T.order != 5 or T.point.x.degree > 1:
        continue
    u = elliptic_log(E, L, T.point)
    row = torsion_betti_row(E, L, T.point, T.order)
    row2 = torsion_betti_row(E, hi, T.point, T.order)
    print(
        f"P = {T.point}: u = {mpmath.nstr(u, 12)}, "
        f"5p = {mpmath.nstr(5 * row['p'], 12)}, 5q = {mpmath.nstr(5 * row['q'], 12)}, "
        f"residual {mpmath.nstr(max(row['frac_ap'], row['frac_aq']), 3)} -> "
        f"{mpmath.nstr(max(row2['frac_ap'], row2['frac_aq']), 3)}"
    )
