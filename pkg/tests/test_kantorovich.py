import math

import numpy as np
import pytest

from finquant import (
    FiniteMeasure,
    GaFunction,
    asymptotic_dr_family,
    benford_best_d1,
    benford_best_dr_shooting,
    best_dr_general,
    best_given_positions_d1,
    best_given_weights_d1,
    dr_distance,
    make_benford,
    make_beta21,
    make_exponential,
    uniform_weights,
)
from finquant.kantorovich import (
    best_fortet_mourier,
    cell_argmin,
    mean_quantile,
)

B10 = make_benford(10.0)


def weight_grid_minimum_d1(mu, x, steps=1000):
    best = math.inf
    for p1 in np.linspace(0.0, 1.0, steps + 1):
        best = min(best, dr_distance(mu, FiniteMeasure(x, [p1, 1.0 - p1]), 1.0))
    return best


class TestGivenPositions:
    def test_benford_odd_sixth_quantile_positions(self):
        # With atoms pinned at the odd-sixth quantiles the optimal cuts are
        # the midpoint cdf values (grid-verified optimum 0.080548); uniform
        # weights at the same atoms give the larger best-uniform value.
        x = np.array([10.0 ** (1.0 / 6.0), 10.0 ** 0.5, 10.0 ** (5.0 / 6.0)])
        res = best_given_positions_d1(B10, x)
        mids = 0.5 * (x[:-1] + x[1:])
        assert np.allclose(res.measure.P[1:-1], B10.cdf_vec(mids), atol=1e-12)
        assert res.distance == pytest.approx(0.0805467090, abs=2e-4)
        uniform_val = dr_distance(B10, FiniteMeasure(x, uniform_weights(3)), 1.0)
        assert uniform_val == pytest.approx(0.08232, abs=1e-5)
        assert res.distance < uniform_val

    def test_single_atom_weight_trivial(self):
        res = best_given_positions_d1(B10, [3.3])
        assert np.allclose(res.measure.p, [1.0])

    def test_beta21_matches_weight_grid(self):
        mu = make_beta21()
        res = best_given_positions_d1(mu, [0.25, 0.75])
        assert res.distance == pytest.approx(
            weight_grid_minimum_d1(mu, [0.25, 0.75]), abs=2e-3)

    def test_slacks_nonpositive(self):
        res = best_given_positions_d1(B10, [2.0, 5.0, 8.0])
        assert max(res.certificate.slacks) <= 1e-9


class TestGivenWeights:
    def test_benford_uniform_closed_form(self):
        for n in (1, 2, 3, 6):
            res = best_given_weights_d1(B10, uniform_weights(n))
            want_x = 10.0 ** ((2.0 * np.arange(1, n + 1) - 1.0) / (2.0 * n))
            assert np.allclose(res.measure.x, want_x, atol=1e-12)
            want_d = math.tanh(math.log(10.0) / (4.0 * n)) / math.log(10.0)
            assert res.distance == pytest.approx(want_d, abs=1e-12)

    def test_single_cell_median(self):
        res = best_given_weights_d1(B10, [1.0])
        assert res.measure.x[0] == pytest.approx(math.sqrt(10.0), abs=1e-12)

    def test_uniform_three_value(self):
        res = best_given_weights_d1(B10, uniform_weights(3))
        assert res.distance == pytest.approx(0.08232, abs=1e-5)

    def test_slacks_nonpositive(self):
        res = best_given_weights_d1(B10, [0.1, 0.4, 0.5])
        assert max(res.certificate.slacks) <= 1e-9


class TestBenfordBestD1:
    def test_fig_value(self):
        assert benford_best_d1(10.0, 3).distance == pytest.approx(0.07520, abs=1e-5)

    def test_first_cumweight(self):
        res = benford_best_d1(10.0, 3)
        want = 2.0 / math.log(10.0) * math.log(1.0 + (math.sqrt(10.0) - 1.0) / 3.0)
        assert res.measure.P[1] == pytest.approx(want, abs=1e-12)
        assert res.measure.P[1] == pytest.approx(0.4714402104789, abs=1e-10)

    def test_cumweight_recurrence(self):
        res = benford_best_d1(10.0, 5)
        P = res.measure.P
        for j in range(1, 5):
            lhs = 2.0 * 10.0 ** (P[j] / 2.0)
            rhs = 10.0 ** (P[j - 1] / 2.0) + 10.0 ** (P[j + 1] / 2.0)
            assert lhs == pytest.approx(rhs, abs=1e-10)

    def test_closed_distance_matches_numeric_integration(self):
        for b in (2.0, math.e, 10.0):
            for n in range(1, 9):
                res = benford_best_d1(b, n)
                num = dr_distance(make_benford(b), res.measure, 1.0)
                assert res.distance == pytest.approx(num, abs=1e-10)

    def test_constant_scaled_sequence(self):
        const = math.tanh(math.log(10.0) / 4.0) / math.log(10.0)
        for n in (1, 4, 16, 64):
            assert n * benford_best_d1(10.0, n).distance == pytest.approx(
                const, abs=1e-12)


class TestBestDrGeneral:
    def test_unconstrained_r1_matches_closed_form(self):
        res = best_dr_general(B10, 3, 1.0, "unconstrained")
        cf = benford_best_d1(10.0, 3)
        assert res.distance == pytest.approx(cf.distance, abs=1e-8)
        assert np.allclose(res.measure.x, cf.measure.x, atol=1e-7)

    def test_beta21_uniform_positions(self):
        for n in (1, 3, 8):
            res = best_dr_general(make_beta21(), n, 1.0, "uniform")
            want = np.sqrt((2.0 * np.arange(1, n + 1) - 1.0) / (2.0 * n))
            assert np.allclose(res.measure.x, want, atol=1e-13)

    def test_unconstrained_r2_matches_shooting(self):
        res = best_dr_general(B10, 2, 2.0, "unconstrained")
        sh = benford_best_dr_shooting(10.0, 2, 2.0)
        assert res.distance == pytest.approx(sh.distance, abs=1e-7)
        assert np.allclose(res.measure.x, sh.measure.x, atol=1e-6)

    def test_exponential_unconstrained_r1(self):
        res = best_dr_general(make_exponential(), 16, 1.0, "unconstrained")
        assert max(res.certificate.slacks) <= 1e-9
        assert 16 * res.distance == pytest.approx(1.0, abs=0.05)

    def test_invalid_order(self):
        with pytest.raises(Exception):
            best_dr_general(B10, 2, 0.5, "uniform")

    def test_atomic_rejected(self):
        from finquant import Interval, finite_to_dist
        mu = finite_to_dist(FiniteMeasure([1.0, 2.0, 5.0], [0.3, 0.3, 0.4]),
                            Interval(1, 10))
        with pytest.raises(Exception):
            best_dr_general(mu, 2, 2.0, "unconstrained")

    def test_uniform_certificate_membership(self):
        # returned atoms always satisfy the generalized-median conditions
        for r in (1.0, 1.5, 2.0):
            res = best_dr_general(B10, 4, r, "uniform")
            P = res.measure.P
            for j in range(4):
                c = cell_argmin(B10, P[j], P[j + 1], r)
                assert res.measure.x[j] == pytest.approx(c, abs=1e-9)


class TestShooting:
    def test_single_atom_root_in_support(self):
        for r in (1.5, 2.0, 3.0):
            res = benford_best_dr_shooting(10.0, 1, r)
            assert 1.0 < res.measure.x[0] < 10.0

    def test_r_to_one_limit(self):
        sh = benford_best_dr_shooting(10.0, 3, 1.001)
        cf = benford_best_d1(10.0, 3)
        assert np.allclose(sh.measure.x, cf.measure.x, atol=1e-3)

    def test_bracket_independence(self):
        a = benford_best_dr_shooting(10.0, 3, 2.0, bracket=(1.0, 10.0))
        b = benford_best_dr_shooting(10.0, 3, 2.0, bracket=(1.5, 4.0))
        assert a.measure.x[0] == pytest.approx(b.measure.x[0], abs=1e-9)

    def test_weight_slacks(self):
        res = benford_best_dr_shooting(10.0, 4, 2.0)
        assert max(res.certificate.slacks) <= 1e-9

    def test_base_two(self):
        res = benford_best_dr_shooting(2.0, 2, 2.0)
        alt = best_dr_general(make_benford(2.0), 2, 2.0, "unconstrained")
        assert res.distance == pytest.approx(alt.distance, abs=1e-7)


class TestAsymptoticFamilies:
    def test_uniform_family_equals_closed_positions(self):
        fam = asymptotic_dr_family(10.0, 3, 2.0, "uniform")
        want = 10.0 ** ((2.0 * np.arange(1, 4) - 1.0) / 6.0)
        assert np.allclose(fam.x, want, atol=1e-13)

    def test_unconstrained_family_near_optimal(self):
        fam = asymptotic_dr_family(10.0, 64, 2.0, "unconstrained")
        d_fam = dr_distance(B10, fam, 2.0)
        d_best = benford_best_dr_shooting(10.0, 64, 2.0).distance
        assert d_fam / d_best <= 1.05

    def test_family_weights_from_midpoints(self):
        fam = asymptotic_dr_family(10.0, 5, 2.0, "unconstrained")
        for j in range(1, 5):
            want = math.log10(0.5 * (fam.x[j - 1] + fam.x[j]))
            assert fam.P[j] == pytest.approx(want, abs=1e-12)


class TestGaFunction:
    def test_zero_at_one_and_increasing(self):
        g = GaFunction(0.0, 2.0, 20.0)
        assert g(1.0) == 0.0
        vals = [g(x) for x in np.linspace(1.0, 20.0, 40)]
        assert all(u < v for u, v in zip(vals, vals[1:]))

    def test_closed_form_r2(self):
        # for r=2: g_0(x) = (x-1) - 2 log((x+1)/2)
        g = GaFunction(0.0, 2.0, 25.0)
        for x in (1.5, 3.0, 10.0, 24.0):
            want = (x - 1.0) - 2.0 * math.log((x + 1.0) / 2.0)
            assert g(x) == pytest.approx(want, rel=1e-11)

    def test_closed_form_g2(self):
        # for r=2: g_2(x) = 2 log x + 1/x - 1 - 2 log((x+1)/2)
        g = GaFunction(2.0, 2.0, 25.0)
        for x in (1.2, 2.0, 7.7):
            want = 2.0 * math.log(x) + 1.0 / x - 1.0 - 2.0 * math.log((x + 1.0) / 2.0)
            assert g(x) == pytest.approx(want, rel=1e-10)

    def test_inverse_roundtrip(self):
        g = GaFunction(1.5, 1.5, 20.0)
        for x in (1.1, 2.5, 9.0):
            assert g.inverse(g(x)) == pytest.approx(x, abs=1e-10)


class TestCellHelpers:
    def test_mean_quantile_closed_forms(self):
        from finquant.numerics import adaptive_simpson
        for mu in (B10, make_beta21(), make_exponential()):
            got = mean_quantile(mu, 0.2, 0.7)
            want = adaptive_simpson(lambda y: mu.quantile(y), 0.2, 0.7, 1e-12) / 0.5
            assert got == pytest.approx(want, rel=1e-9)

    def test_cell_argmin_r2_is_conditional_mean(self):
        assert cell_argmin(B10, 0.1, 0.6, 2.0) == pytest.approx(
            mean_quantile(B10, 0.1, 0.6), abs=1e-12)

    def test_cell_argmin_generic_first_order(self):
        from finquant.kantorovich import _one_sided
        for r in (1.5, 2.5):
            c = cell_argmin(B10, 0.2, 0.8, r)
            bal = (_one_sided(B10, c, 0.2, 0.8, r - 1.0, "left")
                   - _one_sided(B10, c, 0.2, 0.8, r - 1.0, "right"))
            assert abs(bal) <= 1e-10


class TestBeta21UniformAsymptotics:
    def test_rate_track_small_r(self):
        # the scaled errors approach the stated limits from below; the square
        # root endpoint makes the r = 1.5 approach slow (about n^(-1/4)), so
        # assert monotone approach plus a loose band at the largest size
        mu = make_beta21()
        for r, band in ((1.0, 0.02), (1.5, 0.08)):
            want = (2.0 ** (1.0 - 2.0 * r) / ((r + 1.0) * (2.0 - r))) ** (1.0 / r)
            vals = [n * best_dr_general(mu, n, r, "uniform").distance
                    for n in (128, 512, 1024)]
            assert vals[0] < vals[1] < vals[2] < want
            assert vals[-1] == pytest.approx(want, rel=band)

    def test_r2_log_growth_sanity(self):
        # at r=2 the scaled error grows like sqrt(log n) instead of settling
        mu = make_beta21()
        v64 = 64 * best_dr_general(mu, 64, 2.0, "uniform").distance
        v256 = 256 * best_dr_general(mu, 256, 2.0, "uniform").distance
        assert v256 > v64  # still growing
        ratio = v256 / v64
        want = math.sqrt(math.log(256.0) / math.log(64.0))
        assert ratio == pytest.approx(want, rel=0.06)


def test_best_fortet_mourier_pullback():
    res = best_fortet_mourier(B10, 3, 2.0)
    # pullback of the closed-form transport optimum of the squared law
    cf = benford_best_d1(100.0, 3)
    assert np.allclose(res.measure.x, np.sqrt(cf.measure.x), atol=1e-7)
    assert np.allclose(res.measure.p, cf.measure.p, atol=1e-9)
