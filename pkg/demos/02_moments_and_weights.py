"""From measures to moment tables to squared-weight diagrams and back.

The moment at (k1,k2) is the product of squared weights along any monotone
lattice path; for a measure-described shift it equals the monomial integral.
"""

from fractions import Fraction as F

import romp

mu = romp.AtomicMeasure2([(1, 1, F(1, 4)), (2, 1, F(1, 4)), (1, 2, F(1, 2))])
print("measure:", mu)

gamma = romp.gamma_from_measure(mu, 2, 2)
print("\nmoment table over [0,2]x[0,2]:")
for n in range(2, -1, -1):
    print("  k2=%d:" % n, "  ".join(str(gamma.require((m, n))) for m in range(3)))

weights = romp.weights_from_gamma(gamma)
print("\nsquared weights are moment ratios:")
print("  alpha^2 at (0,0):", weights.alpha_at((0, 0)))
print("  beta^2  at (0,0):", weights.beta_at((0, 0)))
print("  commuting?", romp.check_commuting(weights))

print("\nmoment recovered from the weight diagram (row-then-column path):")
for point in [(1, 1), (2, 2), (0, 2)]:
    print(f"  gamma{point} =", romp.gamma_from_weights(weights, point))

print("\nrestriction to the subspace at (1,1):")
nu, moment = romp.restriction_measure(mu, (1, 1))
print("  normalizing moment:", moment)
print("  localized measure :", nu)

print("\none-variable Berger verification:")
sigma = romp.marginal_x(mu)
row_weights = [
    romp.integrate_power(sigma, k + 1) / romp.integrate_power(sigma, k) for k in range(6)
]
print("  row squared weights:", ", ".join(map(str, row_weights[:3])), "...")
print("  moments match sigma up to order 6?", romp.check_berger_1d(row_weights, sigma, 6))
