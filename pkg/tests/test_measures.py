import math

import mpmath
import numpy as np
import pytest

from nmpauli.channels import ChannelParams, Family, alpha_pm, dkappa_toy, kappa_dephasing, kappa_toy, weights_dephasing
from nmpauli.errors import RateSingular
from nmpauli.measures import (
    blp_from_series,
    blp_objective,
    gamma_dephasing,
    gamma_from_kappa,
    gamma_normalized,
    measure_report,
    n_blp,
    n_hcla_closed_form,
    n_hcla_normalized,
    negative_rate_case,
    rate_profile,
    rhp_from_hcla,
    trace_distance_pair,
    trace_distance_pi2,
)
from nmpauli.oracle import evolve, helstrom_td, pair_states

ALPHAS = [round(0.1 * k, 10) for k in range(1, 11)]


def hcla_oracle(alpha):
    # oracle: high-precision quadrature of -gamma/(1-gamma) built from kappa alone
    mpmath.mp.dps = 30
    a = mpmath.mpf(alpha)
    kap = lambda p: (1 + a * (1 - p)) * p
    dkap = lambda p: mpmath.diff(kap, p)
    gam = lambda p: dkap(p) / (1 - 2 * kap(p))
    lo = ((1 + a) - mpmath.sqrt(1 + a * a)) / (2 * a)
    return float(mpmath.quad(lambda p: -gam(p) / (1 - gam(p)), [lo, mpmath.mpf(1) / 2]))


class TestGamma:
    @pytest.mark.parametrize("alpha", [0.3, 0.7, 1.0])
    def test_matches_direct_substitution(self, alpha):
        for p in np.linspace(0, 0.5, 37):
            k = kappa_dephasing(alpha, p)
            if abs(1 - 2 * k) < 1e-3:
                continue
            assert gamma_dephasing(alpha, p) == pytest.approx((1 + alpha - 2 * alpha * p) / (1 - 2 * k), rel=1e-12)

    def test_large_negative_after_singularity(self):
        am = alpha_pm(0.7)[0]
        assert gamma_dephasing(0.7, am + 1e-4) < -1e3

    def test_markovian_limit(self):
        for p in (0.0, 0.1, 0.3, 0.45):
            assert gamma_dephasing(0.0, p) == pytest.approx(1 / (1 - 2 * p))
            assert gamma_dephasing(1e-8, p) == pytest.approx(1 / (1 - 2 * p), rel=1e-6)

    @pytest.mark.parametrize("alpha", ALPHAS)
    def test_sign_change_at_singularity(self, alpha):
        am = alpha_pm(alpha)[0]
        assert gamma_dephasing(alpha, am - 1e-3) > 0
        if am + 1e-3 <= 0.5:
            assert gamma_dephasing(alpha, am + 1e-3) < 0

    def test_singular(self):
        with pytest.raises(RateSingular):
            gamma_dephasing(0.5, alpha_pm(0.5)[0])
        with pytest.raises(RateSingular):
            gamma_from_kappa(lambda p: kappa_dephasing(0.5, p), alpha_pm(0.5)[0])

    def test_markovian_from_kappa(self):
        assert gamma_from_kappa(lambda p: p, 0.25) == pytest.approx(2.0, abs=1e-8)

    @pytest.mark.parametrize("alpha", [0.3, 0.5, 0.7, 0.9])
    def test_closed_form_vs_finite_difference(self, alpha):
        am = alpha_pm(alpha)[0]
        for p in np.linspace(0, 0.5, 1000):
            if abs(p - am) <= 1e-3:
                continue
            fd = gamma_from_kappa(lambda x: kappa_dephasing(alpha, x), float(p))
            assert fd == pytest.approx(gamma_dephasing(alpha, float(p)), abs=1e-6)

    def test_case_kappa_above_half(self):
        alpha, p = 0.7, 0.4
        k = kappa_dephasing(alpha, p)
        slope = 1 + alpha - 2 * alpha * p
        assert k > 0.5 and slope > 0
        assert gamma_from_kappa(lambda x: kappa_dephasing(alpha, x), p) < 0
        assert negative_rate_case(k, slope) == "kappa-above-half"

    def test_case_analysis(self):
        assert negative_rate_case(0.2, -1.0) == "negative-slope"
        assert negative_rate_case(0.2, 1.0) is None
        assert negative_rate_case(0.7, -1.0) is None

    def test_toy_sign_follows_slope(self):
        eta, omega = 0.5, 50.0
        ps = np.linspace(0, 0.5, 2001)[:-1]
        for p in ps:
            slope = dkappa_toy(p, eta, omega)
            g = gamma_from_kappa(lambda x: kappa_toy(x, eta, omega), float(p), lambda x: dkappa_toy(x, eta, omega))
            assert kappa_toy(p, eta, omega) < 0.5
            assert (g < 0) == (slope < 0)
            if abs(slope) > 1e-4:
                fd = gamma_from_kappa(lambda x: kappa_toy(x, eta, omega), float(p))
                assert (fd < 0) == (slope < 0)


class TestRateProfile:
    @pytest.mark.parametrize("alpha", [0.3, 0.9])
    def test_single_sign_change(self, alpha):
        prof = rate_profile(ChannelParams(Family.DEPHASING, alpha), np.linspace(0, 0.5, 1000))
        gammas = np.array([g for _, g, _ in prof.samples])
        assert np.count_nonzero(np.diff(np.sign(gammas))) == 1
        for _, g, gn in prof.samples:
            assert gn == pytest.approx(-g / (1 - g))
        assert prof.singularity == alpha_pm(alpha)[0]

    def test_depolarizing_unsupported(self):
        with pytest.raises(ValueError):
            rate_profile(ChannelParams(Family.DEPOLARIZING, 0.3), [0.1])


class TestGammaNormalized:
    @pytest.mark.parametrize("alpha", ALPHAS)
    def test_boundary_values(self, alpha):
        am = alpha_pm(alpha)[0]
        assert gamma_normalized(alpha, am) == pytest.approx(1.0, abs=1e-9)
        assert gamma_normalized(alpha, 0.5) == pytest.approx(1 / (1 + alpha / 2), abs=1e-9)

    @pytest.mark.parametrize("alpha", [0.2, 0.6, 1.0])
    def test_equals_normalized_rate(self, alpha):
        am = alpha_pm(alpha)[0]
        for p in np.linspace(am + 1e-3, 0.5, 20):
            g = gamma_dephasing(alpha, p)
            assert gamma_normalized(alpha, p) == pytest.approx(-g / (1 - g), rel=1e-10)

    def test_alpha_one_end(self):
        assert gamma_normalized(1.0, 0.5) == pytest.approx(2 / 3)


class TestHCLA:
    def test_zero(self):
        assert n_hcla_normalized(0.0) == 0.0

    @pytest.mark.parametrize("alpha", [0.1, 0.5, 0.7, 1.0])
    def test_against_high_precision_oracle(self, alpha):
        assert n_hcla_normalized(alpha) == pytest.approx(hcla_oracle(alpha), abs=1e-12)

    def test_alpha_07_value(self):
        v = n_hcla_normalized(0.7)
        assert 0 < v < 0.5 - alpha_pm(0.7)[0]
        # frozen from hcla_oracle(0.7)
        assert v == pytest.approx(0.13588152483661, abs=1e-12)

    @pytest.mark.parametrize("alpha", ALPHAS)
    def test_closed_form_cross_check(self, alpha):
        z = n_hcla_closed_form(alpha)
        assert abs(z.imag) < 1e-10
        assert z.real == pytest.approx(n_hcla_normalized(alpha), abs=1e-12)

    def test_monotone_and_bounded(self):
        grid = np.round(np.arange(0.05, 1.0001, 0.05), 10)
        vals = [n_hcla_normalized(a) for a in grid]
        assert all(b > a for a, b in zip(vals, vals[1:]))
        for a, v in zip(grid, vals):
            assert 0 < v <= 0.5 - alpha_pm(a)[0]

    @pytest.mark.parametrize("alpha", [0.05, 0.5, 1.0])
    def test_step_halving(self, alpha):
        coarse = n_hcla_normalized(alpha, panels=16)
        fine = n_hcla_normalized(alpha, panels=32)
        assert abs(coarse - fine) < 1e-9
        assert abs(fine - n_hcla_normalized(alpha)) < 1e-12

    def test_rhp(self):
        assert rhp_from_hcla(0.0) == 0.0
        assert rhp_from_hcla(0.135) == 0.135
        with pytest.raises(ValueError):
            rhp_from_hcla(0.1, d=3)


class TestTraceDistance:
    def test_initial_orthogonal(self):
        for theta in np.linspace(0, np.pi, 7):
            assert trace_distance_pair(0.4, 0.0, theta) == pytest.approx(1.0, abs=1e-15)

    def test_example_value(self):
        # |1 - 2 kappa| with kappa = 0.127
        assert trace_distance_pair(0.3, 0.1, np.pi / 2) == pytest.approx(0.746, abs=1e-14)

    def test_minimum_at_crossover(self):
        am = alpha_pm(0.3)[0]
        assert trace_distance_pair(0.3, am, np.pi / 2) == pytest.approx(0.0, abs=1e-15)
        for theta in (0.3, 1.0, 2.5):
            ps = np.linspace(0, 0.5, 2001)
            td = trace_distance_pair(0.3, ps, theta)
            assert td.min() >= abs(np.cos(theta)) - 1e-15
            assert trace_distance_pair(0.3, am, theta) == pytest.approx(abs(np.cos(theta)), abs=1e-12)

    @pytest.mark.parametrize("alpha", [0.1, 0.3, 0.5, 0.7, 0.9])
    def test_helstrom_oracle_grid(self, alpha):
        for theta in np.linspace(0, np.pi, 20):
            r0, r1 = pair_states(theta, phi=0.7)
            for p in np.linspace(0, 0.5, 50):
                w = weights_dephasing(alpha, p)
                ref = helstrom_td(evolve(w, r0), evolve(w, r1))
                assert trace_distance_pair(alpha, p, theta) == pytest.approx(ref, abs=1e-10)

    @pytest.mark.parametrize("alpha", [0.2, 0.6, 1.0])
    def test_expanded_root_form(self, alpha):
        # same quantity written through the roots alpha_+ and alpha_-
        am, ap = alpha_pm(alpha)
        for theta in np.linspace(0, np.pi, 9):
            for p in np.linspace(0, 0.5, 21):
                expanded = 1 - 4 * alpha**2 * (1 - p) * p * (ap + am - p) * (2 * ap * am - p) * np.sin(theta) ** 2
                assert trace_distance_pair(alpha, p, theta) == pytest.approx(math.sqrt(max(expanded, 0)), abs=1e-7)

    @pytest.mark.parametrize("alpha", [0.0, 0.3, 0.7, 1.0])
    def test_pi2_consistency(self, alpha):
        ps = np.linspace(0, 0.5, 101)
        np.testing.assert_allclose(trace_distance_pi2(alpha, ps), trace_distance_pair(alpha, ps, np.pi / 2), atol=1e-12)
        np.testing.assert_allclose(trace_distance_pi2(alpha, ps), np.abs(1 - 2 * kappa_dephasing(alpha, ps)), atol=1e-12)

    @pytest.mark.parametrize("alpha", [0.2, 0.5, 0.9])
    def test_pi2_special_points(self, alpha):
        am = alpha_pm(alpha)[0]
        assert trace_distance_pi2(alpha, 0.0) == pytest.approx(1.0, abs=1e-12)
        assert trace_distance_pi2(alpha, am) == pytest.approx(0.0, abs=1e-12)
        assert trace_distance_pi2(alpha, 0.5) == pytest.approx(alpha / 2, abs=1e-12)

    def test_markovian_no_recurrence(self):
        td = trace_distance_pair(0.0, np.linspace(0, 0.5, 500), np.pi / 2)
        assert np.all(np.diff(td) <= 0)
        assert blp_from_series(td) == 0.0


class TestBLP:
    @pytest.mark.parametrize("alpha", ALPHAS)
    def test_equals_half_alpha(self, alpha):
        rep = n_blp(alpha, 257)
        assert abs(rep.n_blp - alpha / 2) < 1e-6
        assert abs(rep.theta_opt - np.pi / 2) <= np.pi / 256

    def test_even_grid(self):
        rep = n_blp(0.6, 64)
        assert rep.n_blp == pytest.approx(0.3, abs=1e-6)
        assert abs(rep.theta_opt - np.pi / 2) <= np.pi / 63

    def test_markovian(self):
        rep = n_blp(0.0)
        assert rep.n_blp == 0.0 and rep.n_hcla_normalized == 0.0 and rep.markovian

    def test_grid_size_validation(self):
        with pytest.raises(ValueError):
            n_blp(0.5, 10)

    @pytest.mark.parametrize("alpha", [0.4, 1.0])
    def test_brute_force_oracle(self, alpha):
        # oracle: positive increments of the Helstrom distance on a fine p-grid, maximized over theta
        ps = np.linspace(0, 0.5, 2001)
        best = 0.0
        for theta in np.linspace(0, np.pi, 33):
            r0, r1 = pair_states(theta)
            td = [helstrom_td(evolve(weights_dephasing(alpha, p), r0), evolve(weights_dephasing(alpha, p), r1)) for p in ps]
            best = max(best, blp_from_series(td))
        assert best == pytest.approx(alpha / 2, abs=1e-3)
        assert n_blp(alpha).n_blp >= best - 1e-12

    def test_objective_form(self):
        # sqrt(1 + (alpha^2/4 - 1) sin^2 theta) - |cos theta|
        for theta in np.linspace(0, np.pi, 13):
            expected = math.sqrt(1 + (0.36 / 4 - 1) * math.sin(theta) ** 2) - abs(math.cos(theta))
            assert blp_objective(0.6, theta) == pytest.approx(expected, abs=1e-12)

    def test_report_fields(self):
        rep = measure_report(0.7)
        assert rep.alpha_minus == pytest.approx(0.342, abs=1e-3)
        assert rep.witness_interval == (rep.alpha_minus, 0.5)
        assert 0 <= rep.n_blp <= 0.5
        assert rep.n_rhp == rep.n_hcla_normalized
