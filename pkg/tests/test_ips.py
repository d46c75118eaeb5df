"""Photon-subtracted twin beam: coefficients, click probability, primitives."""

import numpy as np
import pytest

from onoff_bell.detector import DetectorParams
from onoff_bell.ips import (
    IpsParams,
    ips_click_probability,
    ips_coefficients,
    ips_corr_primitives,
)
from onoff_bell.oracle import ips_oracle_state, oracle_primitives

POINTS = [
    IpsParams(0.3, 0.9, 1.0),
    IpsParams(0.39, 0.9999, 1.0),
    IpsParams(0.6, 0.8, 0.5),
    IpsParams(0.1, 0.5, 0.7),
]


class TestParams:
    def test_rejects_unit_transmissivity(self):
        with pytest.raises(ValueError, match="transmissivity"):
            IpsParams(0.5, 1.0)

    def test_rejects_zero_tap_efficiency(self):
        with pytest.raises(ValueError, match="aps_eff"):
            IpsParams(0.5, 0.9, 0.0)

    def test_rejects_negative_squeezing(self):
        with pytest.raises(ValueError, match="r must"):
            IpsParams(-0.1, 0.9)


class TestCoefficients:
    @pytest.mark.parametrize("p", POINTS, ids=str)
    def test_terms_are_integrable(self, p):
        coeffs = ips_coefficients(p)
        det = coeffs.f_cap_k * coeffs.g_cap_k - coeffs.h_cap_k**2
        assert np.all(det > 0.0)

    def test_first_term_weight_sign(self):
        # C_1 = +1 scaled, C_2 = C_3 < 0, C_4 > 0
        coeffs = ips_coefficients(IpsParams(0.4, 0.9, 0.8))
        assert coeffs.c_k[0] > 0.0
        assert coeffs.c_k[1] < 0.0
        assert coeffs.c_k[2] < 0.0
        assert coeffs.c_k[3] > 0.0
        assert coeffs.c_k[1] == pytest.approx(coeffs.c_k[2], rel=1e-14)


class TestClickProbability:
    @pytest.mark.parametrize("p", POINTS, ids=str)
    def test_matches_four_mode_conditioning(self, p):
        _, p11_oracle = ips_oracle_state(p)
        assert ips_click_probability(p) == pytest.approx(p11_oracle, rel=1e-6)

    def test_monotone_in_tap_efficiency(self):
        values = [
            ips_click_probability(IpsParams(0.4, 0.9, eps))
            for eps in (0.2, 0.4, 0.6, 0.8, 1.0)
        ]
        assert all(b > a for a, b in zip(values, values[1:]))

    def test_vanishes_without_squeezing(self):
        assert ips_click_probability(IpsParams(0.0, 0.9, 1.0)) == pytest.approx(
            0.0, abs=1e-15
        )


class TestPrimitives:
    @pytest.mark.parametrize("p", POINTS, ids=str)
    def test_match_oracle(self, p):
        rng = np.random.default_rng(3)
        for eta in (0.7, 1.0):
            det = DetectorParams(eta)
            for _ in range(2):
                alpha, beta = (
                    complex(*rng.uniform(-0.5, 0.5, 2)),
                    complex(*rng.uniform(-0.5, 0.5, 2)),
                )
                _, corr_i, corr_g, corr_y, _ = ips_corr_primitives(p, eta, alpha, beta)
                brute = oracle_primitives(p, det, alpha, beta)
                assert corr_i == pytest.approx(brute[0], abs=1e-5)
                assert corr_g == pytest.approx(brute[1], abs=1e-5)
                assert corr_y == pytest.approx(brute[2], abs=1e-5)

    def test_correlation_normalizes_at_large_displacement(self):
        p = IpsParams(0.39, 0.9999, 1.0)
        _, _, _, _, corr_e = ips_corr_primitives(p, 0.9, 6.0 + 4.0j, -5.0 - 3.0j)
        assert corr_e == pytest.approx(1.0, abs=1e-4)

    def test_primitives_are_probabilities(self):
        rng = np.random.default_rng(11)
        p = IpsParams(0.5, 0.95, 0.9)
        for _ in range(30):
            eta = rng.uniform(0.1, 1.0)
            alpha, beta = (
                complex(*rng.uniform(-1.0, 1.0, 2)),
                complex(*rng.uniform(-1.0, 1.0, 2)),
            )
            _, corr_i, corr_g, corr_y, corr_e = ips_corr_primitives(p, eta, alpha, beta)
            for value in (corr_i, corr_g, corr_y):
                assert -1e-10 <= value <= 1.0 + 1e-10
            assert -1.0 - 1e-10 <= corr_e <= 1.0 + 1e-10

    def test_eta_validated(self):
        with pytest.raises(ValueError, match="eta"):
            ips_corr_primitives(IpsParams(0.4, 0.9), 1.2, 0.1, 0.1)
