"""Auditing a data set against the significand law.

A finite data set can never match the significand law exactly; the honest
question is whether its distance is close to the theoretical floor for a
measure on that many atoms.  This script audits a synthetic sample (powers of
a Fibonacci-like recursion, a classic near-conformer) and a non-conforming
uniform sample, reporting distance / floor ratios per metric.
"""

import numpy as np

import finquant as fq
from finquant.coefficients import solve_distance
from finquant.metrics import MetricKind, evaluate_distance

b = 10.0
mu = fq.make_benford(b)


def audit(name, data):
    sig = fq.significand(data, b)
    emp = fq.from_samples([s for s in sig if s > 0], fq.Interval(1.0, b))
    n = emp.n
    print(f"{name}: {len(data)} values, {n} distinct significands")
    for spec in ("levy", "d1", "dK"):
        metric = MetricKind.parse(spec)
        d = evaluate_distance(mu, emp, metric)
        floor = solve_distance(mu, metric, "uniform", n)
        print(f"  {metric.label:>4}: distance {d:.6f}  floor {floor:.6f}"
              f"  ratio {d / floor:.2f}")


# geometric growth spreads significands logarithmically: near-conforming
fib = [1.0, 1.0]
for _ in range(300):
    fib.append(fib[-1] + fib[-2])
audit("fibonacci", fib)

# uniform draws on [1, 1000): significands pile up on small leading digits
rng = np.random.default_rng(0)
audit("uniform[1,1000)", list(rng.uniform(1.0, 1000.0, 300)))

# the floor itself: feeding optimal uniform transport atoms back in gives
# ratio 1 for the transport metric
xs = b ** ((2 * np.arange(1, 9) - 1) / 16.0)
audit("optimal 8-atom design", list(xs))
