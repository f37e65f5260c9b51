"""
Dependence through a root of unity
==================================

On y^2 = x^3 - x the point (i, 1 - i) has order four.  Neither coordinate is
1, but i^4 = 1, so the relation holds up to the root of unity i itself.
"""

from tordep.algnum import an_sqrt, as_algebraic, is_root_of_unity
from tordep.betti import verify_relation_logs
from tordep.effective import dependent_torsion_search
from tordep.elliptic import EllipticCurve, on_curve, order_of, point

E = EllipticCurve.short(-1, 0)
i = an_sqrt(as_algebraic(-1), 1j)
P = point(i, 1 - i)
print("on curve:", on_curve(E, P), " order:", order_of(E, P, 8))
print("x = i is a root of unity of order", is_root_of_unity(i))

report = dependent_torsion_search(E, ["X", "Y"], "0.1", 4)
hit = next(h for h in report.hits if h.point.point == P)
c = hit.certificate
print("certificate:", c.to_json())

# the same relation seen numerically: sum b_j log|f_j| = 0 and the
# arguments add up to an integer, at both complex embeddings of Q(i)
check = verify_relation_logs(hit.values, [c.zeta_order * a for a in c.vector])
for row in check["embeddings"]:
    print(f"  embedding {row['embedding_index']}: r residual {row['r_residual']:.1e}, s sum {row['s_sum']:+.3f}")

# the three 2-torsion points have Y = 0 and are excluded rather than tested
for e in report.excluded:
    print("  excluded:", e.point.point, e.reasons)
