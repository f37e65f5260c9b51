"""
A torsion point whose coordinates are multiplicatively dependent
=================================================================

On y^2 = x^3 - x^2 + x the point (1, 1) has order four.  Its x-coordinate
is 1, so X^1 Y^0 = 1 is a relation among the values of X and Y.
"""

from tordep.effective import dependent_torsion_search
from tordep.elliptic import EllipticCurve, order_of, point, scalar_mul, torsion_catalog

E = EllipticCurve(0, -1, 0, 1, 0)
P = point(1, 1)

# doubling lands on the 2-torsion point (0, 0)
print("2P =", scalar_mul(E, 2, P))
print("order of P:", order_of(E, P, 20))

# all torsion up to order 4, over the algebraic closure
cat = torsion_catalog(E, 4)
print(len(cat), "nonzero points of order <= 4")
for T in cat[:6]:
    print(f"  order {T.order}: x ~ {complex(T.point.x):.6g}")

# search the catalog for points where X and Y are dependent
report = dependent_torsion_search(E, ["X", "Y"], "0.1", 4)
print("budget B =", float(report.B), " exponent box M =", report.M)
for h in report.hits:
    c = h.certificate
    print(f"  hit: order {h.point.order}, vector {c.vector}, root of unity of order {c.zeta_order}")
print(len(report.excluded), "points where X or Y vanishes")
