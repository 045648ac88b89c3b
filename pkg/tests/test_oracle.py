import math

import numpy as np
import pytest

from finquant import (
    FiniteMeasure,
    GridSpec,
    Interval,
    brute_force_best,
    certificate_violation,
    definitional_levy,
    finite_to_dist,
    levy_distance,
    make_benford,
)
from finquant.distributions import InvalidParameterError
from finquant.levy import best_given_weights, uniform_weights
from finquant.metrics import MetricKind

B10 = make_benford(10.0)


class TestGridSpec:
    def test_rejects_large_n(self):
        with pytest.raises(InvalidParameterError):
            GridSpec(50, 50, 4)

    def test_rejects_runaway_grid(self):
        with pytest.raises(InvalidParameterError):
            GridSpec(2000, 2000, 3)

    def test_accepts_reasonable(self):
        GridSpec(400, 400, 2)
        GridSpec(50, 30, 3)


class TestBruteForce:
    def test_kolmogorov_single_atom_median(self):
        res = brute_force_best(B10, MetricKind.kolmogorov(), 1, GridSpec(400, 10, 1))
        assert res.distance == pytest.approx(0.5, abs=2e-3)
        assert res.measure.x[0] == pytest.approx(math.sqrt(10.0), rel=0.02)

    def test_exact_representation_on_grid(self):
        mu = finite_to_dist(FiniteMeasure([2.0, 7.0], [0.5, 0.5]), Interval(1, 10))
        for metric in (MetricKind.levy(), MetricKind.kolmogorov(),
                       MetricKind.kantorovich(1.0)):
            res = brute_force_best(mu, metric, 2, GridSpec(60, 60, 2),
                                   extra_positions=(2.0, 7.0))
            assert res.distance == pytest.approx(0.0, abs=1e-12)

    def test_never_beats_solver(self):
        from finquant.levy import best_unconstrained
        want = best_unconstrained(B10, 2).distance
        res = brute_force_best(B10, MetricKind.levy(), 2, GridSpec(150, 150, 2))
        assert res.distance >= want - 1e-9
        assert res.distance - want < 5e-3

    def test_uniform_mode(self):
        from finquant.kantorovich import best_dr_general
        want = best_dr_general(B10, 2, 1.0, "uniform").distance
        res = brute_force_best(B10, MetricKind.kantorovich(1.0), 2,
                               GridSpec(300, 10, 2), mode="uniform")
        assert res.distance >= want - 1e-9
        assert res.distance - want < 1e-3

    def test_three_atoms_small_grid(self):
        from finquant.kolmogorov import best_unconstrained_K
        want = best_unconstrained_K(B10, 3).distance
        res = brute_force_best(B10, MetricKind.kolmogorov(), 3, GridSpec(60, 24, 3))
        assert res.distance >= want - 1e-9
        assert res.distance - want < 2e-2

    def test_minimizer_inside_certificate_boxes(self):
        from finquant.levy import best_unconstrained
        solver = best_unconstrained(B10, 2)
        res = brute_force_best(B10, MetricKind.levy(), 2, GridSpec(200, 200, 2))
        viol = certificate_violation(B10, MetricKind.levy(), res.measure.x,
                                     res.measure.P, solver.certificate.value)
        h = 9.0 / 200 + 1.0 / 200
        assert viol["weight_slack"] <= h
        assert viol["position_slack"] <= h


class TestDefinitionalLevy:
    def test_best_uniform_regression(self):
        nu = best_given_weights(B10, uniform_weights(3)).measure
        assert definitional_levy(B10, nu, 10_000) == pytest.approx(0.1566, abs=1e-4)

    def test_exact_discretization(self):
        m = FiniteMeasure([2.0, 5.0], [0.4, 0.6])
        mu = finite_to_dist(m, Interval(1, 10))
        assert definitional_levy(mu, m, 2000) == pytest.approx(0.0, abs=1e-8)

    def test_agrees_with_cell_formula(self):
        rng = np.random.default_rng(17)
        for _ in range(12):
            k = int(rng.integers(1, 5))
            nu = FiniteMeasure(np.sort(rng.uniform(1, 10, k)),
                               rng.dirichlet(np.ones(k)))
            a = definitional_levy(B10, nu, 100_000)
            b = levy_distance(B10, nu)
            assert a == pytest.approx(b, abs=1e-6)

    def test_grid_floor(self):
        with pytest.raises(InvalidParameterError):
            definitional_levy(B10, FiniteMeasure([2.0], [1.0]), 10)
