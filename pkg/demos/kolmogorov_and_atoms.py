"""Best sup-distance approximations, and why atoms change the game.

For continuous laws the best and best-uniform sup-distance approximations
coincide (value 1/(2n), atoms at odd-2n-tile quantiles).  One atom is enough
to break that: the mixture 3/4 point mass + 1/4 uniform has a strictly better
unconstrained approximation than any uniform-weight one.
"""

import numpy as np

import finquant as fq

mu = fq.make_benford(10.0)
print("significand law: best sup-distance approximation")
for n in (1, 2, 3, 5):
    res = fq.best_unconstrained_K(mu, n)
    print(f"  n={n}: distance {res.distance:.6f} = 1/(2n), atoms",
          np.round(res.measure.x, 4))

print("\nthe same atoms are the best uniform transport-1 atoms:")
k_pos = fq.best_unconstrained_K(mu, 4).measure.x
d_pos = fq.best_dr_general(mu, 4, 1.0, "uniform").measure.x
print("  max gap:", np.max(np.abs(k_pos - d_pos)))

print("\natomic mixture: 0.75 * delta_0 + 0.25 * uniform[0,1]")
mix = fq.Mixture([("a", 0.0, 0.75), ("u", 0.0, 1.0, 0.25)])
print("  n   best = 1/(4(2n-1))   uniform = 1/(2 max(n,2))")
for n in range(1, 7):
    best = fq.best_unconstrained_K(mix, n)
    unif = fq.best_given_weights_K(mix, fq.uniform_weights(n))
    marker = "  <- strictly better" if best.distance < unif.distance - 1e-12 else ""
    print(f"  {n}   {best.distance:.6f}            {unif.distance:.6f}{marker}")

print("\nbest atoms for the mixture lean on the point mass:")
res = fq.best_unconstrained_K(mix, 3)
print("  atoms:", np.round(res.measure.x, 5), " weights:", np.round(res.measure.p, 5))

print("\nper-cell sup deviations need one-sided care around jumps:")
f = fq.MonotoneFn.from_cdf(mix)
print("  kappa just left of the atom:", fq.kappa(f, (0.8, 0.9), -1e-9))
print("  kappa at the atom          :", fq.kappa(f, (0.8, 0.9), 0.0))
