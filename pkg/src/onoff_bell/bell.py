"""Correlation functions and Bell quantities for the displaced on/off test.

Each mode is displaced and measured by an on/off detector; the dichotomic
outcome +1 (no click) / -1 (click) gives the correlation

    E(alpha, beta) = 1 + 4 I(alpha, beta) - 2 [G(alpha) + Y(beta)]

and the CHSH combination over a quadruple of displacements

    B = E(alpha, beta) + E(alpha', beta) + E(alpha, beta') - E(alpha', beta').

Dark counts with a thermal background reduce exactly to an efficiency
rescale (see dark_scaling_map); a first-order-in-D expansion and the
POVM-aware upper bound

    B_max = 2 sqrt(2) {1 - [eA(alpha) + eB(beta) + eA(alpha') + eB(beta')]}
    eA(z) = G_eta(z) - G_{eta(2-eta)}(z) >= 0

are provided as well.  The bound follows from Pi_0(eta)^2 = Pi_0(eta(2-eta)),
which measures how far the no-click element is from a projector.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from math import isfinite, pi, sqrt

import numpy as np

from .detector import (
    THERMAL,
    DetectorParams,
    UnsupportedKernelError,
    dark_scaling_map,
    squared_no_click_efficiency,
)
from .ips import IpsParams, _ips_primitives_raw
from .states import StateSpec, _primitives_raw

KAPPA_DEFAULT = sqrt(11.0)
CIRELSON = 2.0 * sqrt(2.0)

SCHEME_OPPOSITE = "opposite"
SCHEME_ALIGNED = "aligned"
SCHEME_TWO_PHOTON = "two-photon"
SCHEME_FULL = "full"
SCHEME_NAMES = (SCHEME_OPPOSITE, SCHEME_ALIGNED, SCHEME_TWO_PHOTON, SCHEME_FULL)

SMALL_D_WINDOW = 0.05


@dataclass(frozen=True)
class DisplacementQuad:
    alpha: complex
    beta: complex
    alpha_p: complex
    beta_p: complex

    def __post_init__(self):
        for name in ("alpha", "beta", "alpha_p", "beta_p"):
            value = complex(getattr(self, name))
            if not (isfinite(value.real) and isfinite(value.imag)):
                raise ValueError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)


@dataclass(frozen=True)
class QuadScheme:
    """One-parameter families of displacement quadruples.

    opposite:   alpha = j, beta = -j, alpha' = -kappa j, beta' = kappa j
    aligned:    alpha = beta = j, alpha' = beta' = -kappa j
    two-photon: alpha = beta = 0, alpha' = beta' = sqrt(2) e^{i pi/4} j
    full:       a fixed explicit quadruple, ignoring j

    For the two-photon scheme the phase of alpha' is immaterial when
    beta' = alpha' (the cross term depends on alpha'^2 beta'*^2 = |alpha'|^4);
    pairing beta' = alpha'* instead kills the violation.
    """

    variant: str
    kappa: float = KAPPA_DEFAULT
    quad: DisplacementQuad | None = None

    def __post_init__(self):
        if self.variant not in SCHEME_NAMES:
            raise ValueError(f"unknown scheme {self.variant!r}")
        if self.kappa <= 0.0:
            raise ValueError(f"kappa must be > 0, got {self.kappa}")
        if (self.variant == SCHEME_FULL) != (self.quad is not None):
            raise ValueError("the full scheme (and only it) carries an explicit quad")

    def quad_at(self, j: float) -> DisplacementQuad:
        if self.variant == SCHEME_OPPOSITE:
            return DisplacementQuad(j, -j, -self.kappa * j, self.kappa * j)
        if self.variant == SCHEME_ALIGNED:
            return DisplacementQuad(j, j, -self.kappa * j, -self.kappa * j)
        if self.variant == SCHEME_TWO_PHOTON:
            zeta = complex(sqrt(2.0) * np.exp(1j * pi / 4.0) * j)
            return DisplacementQuad(0j, 0j, zeta, zeta)
        return self.quad


def _raw_primitives(state, eta: float, alpha: complex, beta: complex):
    """(I, G, Y) at dark_mean = 0 without range checks on eta."""
    if isinstance(state, IpsParams):
        _, corr_i, corr_g, corr_y, _ = _ips_primitives_raw(state, eta, alpha, beta)
        return corr_i, corr_g, corr_y
    if isinstance(state, StateSpec):
        return _primitives_raw(state, eta, alpha, beta)
    raise TypeError(f"unsupported state {type(state).__name__}")


def correlation_primitives(state, det: DetectorParams, alpha: complex, beta: complex):
    """(I, G, Y) with dark counts folded in via the thermal scaling law."""
    alpha, beta = complex(alpha), complex(beta)
    if det.dark_mean == 0.0:
        return _raw_primitives(state, det.eta, alpha, beta)
    if det.background != THERMAL:
        raise UnsupportedKernelError(
            "closed-form correlations with dark counts exist for the thermal "
            "background only; use the oracle for the Poissonian case"
        )
    eta_eff, i_scale, gy_scale = dark_scaling_map(det)
    corr_i, corr_g, corr_y = _raw_primitives(state, eta_eff, alpha, beta)
    return i_scale * corr_i, gy_scale * corr_g, gy_scale * corr_y


def correlation(state, det: DetectorParams, alpha: complex, beta: complex) -> float:
    """Dichotomic correlation E = 1 + 4I - 2(G + Y), in [-1, 1]."""
    corr_i, corr_g, corr_y = correlation_primitives(state, det, alpha, beta)
    return 1.0 + 4.0 * corr_i - 2.0 * (corr_g + corr_y)


def bell_parameter(state, det: DetectorParams, quad: DisplacementQuad) -> float:
    return (
        correlation(state, det, quad.alpha, quad.beta)
        + correlation(state, det, quad.alpha_p, quad.beta)
        + correlation(state, det, quad.alpha, quad.beta_p)
        - correlation(state, det, quad.alpha_p, quad.beta_p)
    )


def ch_value(state, det: DetectorParams, quad: DisplacementQuad) -> float:
    """CH combination; equals (B - 2)/4 identically."""
    i_ab, g_a, _ = correlation_primitives(state, det, quad.alpha, quad.beta)
    i_pb, _, y_b = correlation_primitives(state, det, quad.alpha_p, quad.beta)
    i_ap, _, _ = correlation_primitives(state, det, quad.alpha, quad.beta_p)
    i_pp, _, _ = correlation_primitives(state, det, quad.alpha_p, quad.beta_p)
    return i_ab + i_pb + i_ap - i_pp - g_a - y_b


def _bell_raw(state, eta: float, quad: DisplacementQuad) -> float:
    """B at dark_mean = 0 without eta range checks (finite-difference helper)."""

    def corr(alpha, beta):
        ci, cg, cy = _raw_primitives(state, eta, alpha, beta)
        return 1.0 + 4.0 * ci - 2.0 * (cg + cy)

    return (
        corr(quad.alpha, quad.beta)
        + corr(quad.alpha_p, quad.beta)
        + corr(quad.alpha, quad.beta_p)
        - corr(quad.alpha_p, quad.beta_p)
    )


def bell_small_d(state, eta: float, dark_mean: float, quad: DisplacementQuad) -> float:
    """First-order-in-D approximation of the Bell parameter.

    B ~ (1 - 2D - eta D d/deta) B_{eta,0} + 4D [1 - G_{eta,0}(alpha) - Y_{eta,0}(beta)],
    with the eta-derivative taken by central finite difference.  The
    correction term follows from expanding the exact thermal scaling law
    and leaves an O(D^2) residual.
    """
    if not 0.0 < eta <= 1.0:
        raise ValueError(f"eta must be in (0, 1], got {eta}")
    if dark_mean < 0.0:
        raise ValueError(f"dark_mean must be >= 0, got {dark_mean}")
    if dark_mean > SMALL_D_WINDOW:
        warnings.warn(
            f"first-order expansion used outside its validity window "
            f"(D = {dark_mean} > {SMALL_D_WINDOW})",
            stacklevel=2,
        )
    bell_0 = _bell_raw(state, eta, quad)
    if dark_mean == 0.0:
        return bell_0
    step = 1e-4 * eta
    d_bell = (_bell_raw(state, eta + step, quad) - _bell_raw(state, eta - step, quad)) / (
        2.0 * step
    )
    _, g_a, y_b = _raw_primitives(state, eta, quad.alpha, quad.beta)
    return (
        bell_0 * (1.0 - 2.0 * dark_mean)
        - eta * dark_mean * d_bell
        + 4.0 * dark_mean * (1.0 - g_a - y_b)
    )


def _projectivity_defects(state, eta: float, alpha: complex, beta: complex):
    """(eA(alpha), eB(beta)): marginal gaps G_eta - G_{eta(2-eta)} per arm."""
    eta_sq = squared_no_click_efficiency(eta)
    _, g1, y1 = _raw_primitives(state, eta, alpha, beta)
    _, g2, y2 = _raw_primitives(state, eta_sq, alpha, beta)
    return g1 - g2, y1 - y2


def bell_max_bound(state, det: DetectorParams, quad: DisplacementQuad) -> float:
    """POVM-aware upper bound on B; equals 2 sqrt(2) only at eta = 1."""
    if det.dark_mean != 0.0:
        raise UnsupportedKernelError("the bound is derived for dark_mean = 0 only")
    ea_a, eb_b = _projectivity_defects(state, det.eta, quad.alpha, quad.beta)
    ea_ap, eb_bp = _projectivity_defects(state, det.eta, quad.alpha_p, quad.beta_p)
    return CIRELSON * (1.0 - (ea_a + eb_b + ea_ap + eb_bp))
