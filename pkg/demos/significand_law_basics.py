"""Tour of the distribution toolkit: cdfs, quantiles, atoms, and distances.

Every law exposes exact one-sided cdf/quantile evaluation, which is what the
approximation solvers lean on.  This script walks through the built-in laws
and evaluates the four metrics against small hand-made discrete measures.
"""

import numpy as np

import finquant as fq

mu = fq.make_benford(10.0)
print("significand law, base 10")
print("  cdf(sqrt(10)) =", mu.cdf(np.sqrt(10.0)), " (the median)")
print("  quantile(1/3) =", mu.quantile(1 / 3), "= 10^(1/3)")
print("  leading-digit masses:",
      [round(mu.cdf(d + 1) - mu.cdf(d), 4) for d in range(1, 10)])

print("\nsquare law on [0,1]: cdf x^2, quantile sqrt")
beta = fq.make_beta21()
print("  cdf(0.5) =", beta.cdf(0.5), " quantile(0.25) =", beta.quantile(0.25))

print("\ninverse Cantor law: quantile is the Cantor function")
ic = fq.make_inverse_cantor(depth=6)
print("  cdf(1/2) =", ic.cdf(0.5), " atom(1/2) =", ic.atom(0.5),
      " atom(1/4) =", ic.atom(0.25))
print("  six largest atoms:", sorted(ic.atom_list(), key=lambda a: -a[1])[:6])

print("\nempirical measures")
data = [2.0, 2.0, 3.5, 7.0]
emp = fq.from_samples(data, fq.Interval(1, 10))
print("  atoms:", emp.x, " weights:", emp.p)
nu = fq.finite_to_dist(emp, fq.Interval(1, 10))
print("  step quantile at the tie: quantile(0.5) =", nu.quantile(0.5))

print("\nfour distances from the significand law to that empirical measure")
print("  levy       :", fq.levy_distance(mu, emp))
print("  kolmogorov :", fq.kolmogorov_distance(mu, emp))
print("  transport-1:", fq.kantorovich_distance(mu, nu, 1.0))
print("  transport-2:", fq.kantorovich_distance(mu, nu, 2.0))
print("  fortet-mourier-2:", fq.fortet_mourier(mu, nu, 2.0))
