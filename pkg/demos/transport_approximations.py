"""Best transport (L^r) approximations of the significand law.

r = 1 has closed forms; r > 1 is solved by shooting through the strictly
increasing ratio integrals.  Asymptotically optimal closed-form families get
within a few percent of the true optimum already at moderate sizes.
"""

import numpy as np

import finquant as fq

b, n = 10.0, 3
mu = fq.make_benford(b)

res_u = fq.best_dr_general(mu, n, 1.0, "uniform")
print(f"best uniform transport-1, n={n}: {res_u.distance:.6f} (0.08232...)")
print("  atoms are the odd-2n-tile quantiles:", np.round(res_u.measure.x, 5))

res_b = fq.benford_best_d1(b, n)
print(f"\nunconstrained best transport-1, n={n}: {res_b.distance:.6f} (0.07520...)")
print("  atoms:", np.round(res_b.measure.x, 5))
print("  cumulative weights:", np.round(res_b.measure.P, 5))
print("  scaled error n*d is constant in n:",
      [round(k * fq.benford_best_d1(b, k).distance, 8) for k in (1, 2, 4, 8)])

print("\ntransport-2 via shooting:")
for k in (1, 2, 3):
    res = fq.benford_best_dr_shooting(b, k, 2.0)
    print(f"  n={k}: distance {res.distance:.6f}, atoms {np.round(res.measure.x, 4)}")

alt = fq.best_dr_general(mu, 2, 2.0, "unconstrained")
sh = fq.benford_best_dr_shooting(b, 2, 2.0)
print("\nalternating iteration agrees with shooting at n=2:",
      abs(alt.distance - sh.distance))

print("\nasymptotically best family vs true optimum (r=2):")
for k in (4, 16, 64):
    fam = fq.asymptotic_dr_family(b, k, 2.0, "unconstrained")
    d_fam = fq.dr_distance(mu, fam, 2.0)
    d_best = fq.benford_best_dr_shooting(b, k, 2.0).distance
    print(f"  n={k}: ratio {d_fam / d_best:.5f}")

print("\nfortet-mourier transfers through the power map x -> x^r:")
res_fm = fq.best_fortet_mourier(mu, 3, 2.0)
print("  best FM-2 atoms:", np.round(res_fm.measure.x, 5),
      " distance:", round(res_fm.distance, 6))
