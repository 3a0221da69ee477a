"""Tour of the exact atomic-measure algebra.

Everything below is computed with exact rationals; printing a measure shows
its canonical form (sorted atoms, merged duplicates, no zero masses).
"""

from fractions import Fraction as F

import romp

print("== building measures ==")
mu = romp.AtomicMeasure2([(0, 0, F(1, 2)), (1, 1, F(1, 4)), (1, 1, F(1, 4))])
print("two entries at (1,1) merge on construction:", mu)
print("total mass:", romp.total_mass(mu), "| probability?", romp.is_probability(mu))

print("\n== marginals ==")
print("first-coordinate marginal :", romp.marginal_x(mu))
print("second-coordinate marginal:", romp.marginal_y(mu))

print("\n== moments ==")
for m, n in [(0, 0), (1, 0), (1, 1), (2, 2)]:
    print(f"integral of s^{m} t^{n}:", romp.integrate_monomial(mu, m, n))

print("\n== densities ==")
scaled = romp.density_scale(mu, 1, 1, 2)
print("(2 s t) density kills the origin atom:", scaled)
print("reciprocal scaling inverts it:", romp.reciprocal_scale(scaled, 1, 1, F(1, 2)))

print("\n== reciprocal norms decide integrability structurally ==")
print("1/(st) against mu:", romp.reciprocal_norm(mu, 1, 1), "(mass at the origin)")
open_part = romp.split_regions(mu).open
print("1/(st) against the open part:", romp.reciprocal_norm(open_part, 1, 1))

print("\n== extremal measure ==")
two_atoms = romp.AtomicMeasure2([(1, 1, F(1, 2)), (2, 1, F(1, 2))])
print("reweight by 1/s and renormalize:", romp.extremal(two_atoms, "s"))

print("\n== region split ==")
regions = romp.split_regions(mu)
print("open:", regions.open)
print("s=0 axis:", regions.s_axis, "| t=0 axis:", regions.t_axis, "| origin:", regions.origin)
