"""
Heights, Kronecker and the size of the exponent box
===================================================

Certified Weil heights bound how far the relation search has to look.
"""

from fractions import Fraction

from tordep.algnum import an_sqrt, as_algebraic, is_root_of_unity, weil_height
from tordep.algnum.height import mahler_measure_log
from tordep.multdep import are_dependent, masser_gm_bound, masser_lattice_bound

# the height is log of the Mahler measure divided by the degree
phi = (1 + an_sqrt(as_algebraic(5), 2.2)) / 2
h = weil_height(phi)
lo, hi = mahler_measure_log(phi.minpoly)
print(f"h(phi) in [{float(h.lower):.12f}, {float(h.upper):.12f}], log M = {float(lo):.12f}")

# Kronecker: height zero exactly for roots of unity
for z in (as_algebraic(-1), an_sqrt(as_algebraic(-1), 1j), (3 + 4 * an_sqrt(as_algebraic(-1), 1j)) / 5):
    print(f"  {complex(z):.3g}: root of unity of order {is_root_of_unity(z)}, h <= {float(weil_height(z).upper):.3g}")

# both box formulas for two numbers of height at most log 3
B = Fraction(11, 10)
print("lattice box:", masser_lattice_bound(2, B, Fraction(1, 10)))
print("G_m box    :", masser_gm_bound(2, 2, B, Fraction(69, 100)))

# 2 and 3 are independent; the search exhausts its box to prove it
print(are_dependent([as_algebraic(2), as_algebraic(3)]))
print(are_dependent([as_algebraic(8), as_algebraic(Fraction(1, 4))]))
