"""Best Levy approximations of the significand law, three ways.

Reproduces the n = 3 story: the best uniform approximation solves a single
scalar equation, the unconstrained best iterates the covering map, and both
are certified by per-cell envelope penalties.  Optimal positions for uniform
weights form whole intervals; the solver reports those boxes.
"""

import numpy as np

import finquant as fq

mu = fq.make_benford(10.0)
n = 3

res_u = fq.best_given_weights(mu, fq.uniform_weights(n))
print(f"best uniform, n={n}: distance {res_u.distance:.6f} (0.1566...)")
print("  atoms:", np.round(res_u.measure.x, 5))
print("  optimality boxes for each atom:")
for j, (lo, hi) in enumerate(res_u.certificate.boxes, start=1):
    print(f"    x_{j} in [{lo:.5f}, {hi:.5f}]")

res_b = fq.best_unconstrained(mu, n)
print(f"\nunconstrained best, n={n}: distance {res_b.distance:.6f} (0.1439...)")
print("  atoms:", np.round(res_b.measure.x, 5))
print("  weights:", np.round(res_b.measure.p, 5))
print("  worst certificate slack:", max(res_b.certificate.slacks))

cf = fq.benford_best_closed_form(10.0, n)
print("\nclosed form agrees with the covering-map solve:",
      np.max(np.abs(cf.measure.x - res_b.measure.x)))

print("\nfixing positions instead: atoms at 2, 5, 9")
res_p = fq.best_given_positions(mu, [2.0, 5.0, 9.0])
print("  optimal weights:", np.round(res_p.measure.p, 5),
      " distance:", round(res_p.distance, 6))

print("\nscaled errors n * distance (best is nonincreasing, uniform nondecreasing):")
for mode in ("best", "uniform"):
    pairs = fq.levy_coefficient_check(mu, mode, [1, 2, 4, 8, 16, 32])
    print(f"  {mode:8s}:", [round(v, 5) for _, v in pairs])
print("  limits:", round(fq.benford_coefficient(fq.MetricKind.levy(), 10, "best"), 5),
      "and", round(fq.benford_coefficient(fq.MetricKind.levy(), 10, "uniform"), 5))
