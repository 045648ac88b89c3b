"""Two laws off the beaten path: the inverse Cantor law and the exponential.

The inverse Cantor law is discrete with atoms at every dyadic rational, yet
its quantile (the Cantor function) is continuous; optimal errors decay faster
than 1/n and the scaled sequences oscillate instead of converging.  The
exponential shows the solvers running on an unbounded support.
"""

import math

import numpy as np

import finquant as fq
from finquant.metrics import MetricKind

ic = fq.make_inverse_cantor(16)
alpha = math.log(3.0) / math.log(2.0)
print("inverse Cantor law: scaled errors n^alpha * d with alpha = log3/log2")
ns = [1, 2, 3, 4, 6, 9, 27, 81]
for mode, solver in [("best", lambda n: fq.best_unconstrained(ic, n).distance),
                     ("bestK", lambda n: fq.best_unconstrained_K(ic, n).distance)]:
    vals = [n ** alpha * solver(n) for n in ns]
    print(f"  {mode:5s}:", "  ".join(f"{v:.4f}" for v in vals),
          " (bounded, oscillating)")

print("\nuniform-weight scaled errors n * d stay in [1/216, 1/2]:")
vals = [n * fq.best_given_weights(ic, fq.uniform_weights(n)).distance for n in ns]
print("  levy :", "  ".join(f"{v:.4f}" for v in vals))

print("\ntransport orders decay with their own exponents (exploratory only):")
for r in (1.0, 2.0):
    a_r = fq.cantor_exponent(MetricKind.kantorovich(r), "uniform")
    vals = [n ** a_r * fq.best_dr_general(ic, n, r, "uniform").distance
            for n in (3, 9, 27)]
    print(f"  r={r}: exponent {a_r:.4f}, scaled values",
          "  ".join(f"{v:.4f}" for v in vals))

print("\nstandard exponential (unbounded support, normalization 1):")
ex = fq.make_exponential()
for n in (8, 64, 512):
    lb = n * fq.best_unconstrained(ex, n).distance
    lu = n * fq.best_given_weights(ex, fq.uniform_weights(n)).distance
    print(f"  n={n:4d}: n*levy best {lb:.5f} -> log2/2 = {math.log(2)/2:.5f},"
          f" uniform {lu:.5f} -> 1/2")
res = fq.best_dr_general(ex, 64, 1.0, "unconstrained")
print("  n=64 transport-1 best: n*d =", round(64 * res.distance, 5), "-> 1")
print("  best atoms start at", np.round(res.measure.x[:4], 4), "...")
print("  sup-distance optimum is exactly 1/(2n):",
      fq.best_unconstrained_K(ex, 64).distance, "=", 1 / 128)
