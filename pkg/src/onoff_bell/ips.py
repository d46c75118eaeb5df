"""De-Gaussified twin beam via inconclusive photon subtraction (IPS).

Both twin-beam modes are tapped by beam splitters of transmissivity T,
the tap modes are measured by on/off detectors of efficiency eps, and
the state is kept when both detectors click.  The conditional Wigner
function is a normalized sum of four Gaussian terms

    W(z, w) = (4 / (pi^2 p11)) sum_k Ck exp{-Fk|z|^2 - Gk|w|^2 + Hk(zw + z*w*)}

whose coefficients are closed functions of (r, T, eps).  The correlation
primitives of the displaced on/off test follow term by term from the
same Gaussian integrals as for the twin beam.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import cosh, exp, sinh

import numpy as np

K_TERMS = 4


@dataclass(frozen=True)
class IpsParams:
    r: float
    transmissivity: float
    aps_eff: float = 1.0

    def __post_init__(self):
        if self.r < 0.0:
            raise ValueError("r must be >= 0")
        if not 0.0 < self.transmissivity < 1.0:
            raise ValueError(
                "transmissivity must lie strictly in (0, 1); use 0.9999 for the "
                "near-unit operating point"
            )
        if not 0.0 < self.aps_eff <= 1.0:
            raise ValueError("aps_eff must lie in (0, 1]")


@dataclass(frozen=True)
class IpsCoefficients:
    """Per-term (k = 1..4) coefficient set; arrays are indexed k-1."""

    c_k: np.ndarray        # weights C_k of the Gaussian terms
    f_cap_k: np.ndarray    # F_k
    g_cap_k: np.ndarray    # G_k
    h_cap_k: np.ndarray    # H_k
    x_k: np.ndarray
    y_k: np.ndarray
    f_k: np.ndarray
    g_k: np.ndarray
    h_k: np.ndarray
    n_k: np.ndarray        # common prefactor of f_k, g_k, h_k
    a: float
    b: float

    def __post_init__(self):
        for name in ("c_k", "f_cap_k", "g_cap_k", "h_cap_k", "x_k", "y_k",
                     "f_k", "g_k", "h_k", "n_k"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))
        det = self.f_cap_k * self.g_cap_k - self.h_cap_k**2
        if np.any(det <= 0.0):
            raise ValueError("some Gaussian term is not integrable (Fk Gk - Hk^2 <= 0)")


def ips_coefficients(p: IpsParams) -> IpsCoefficients:
    big_a = cosh(2.0 * p.r)
    big_b = sinh(2.0 * p.r)
    t, eps = p.transmissivity, p.aps_eff
    a = 2.0 * (big_a * (1.0 - t) + t)
    b = 2.0 * (big_a * t + (1.0 - t))
    shift = 2.0 * eps / (2.0 - eps)
    x = np.array([a, a + shift, a, a + shift])
    y = np.array([a, a, a + shift, a + shift])
    base_c = np.array(
        [1.0, -2.0 / (2.0 - eps), -2.0 / (2.0 - eps), 4.0 / (2.0 - eps) ** 2]
    )
    denom = x * y - 4.0 * big_b**2 * (1.0 - t) ** 2
    weights = 4.0 * base_c / denom
    n_k = 4.0 * t * (1.0 - t) / denom
    one_minus_a = 1.0 - big_a
    f_k = n_k * (x * big_b**2 + 4.0 * big_b**2 * one_minus_a * (1.0 - t) + y * one_minus_a**2)
    g_k = n_k * (x * one_minus_a**2 + 4.0 * big_b**2 * one_minus_a * (1.0 - t) + y * big_b**2)
    h_k = n_k * (
        (x + y) * big_b * one_minus_a
        + 2.0 * big_b * (big_b**2 + one_minus_a**2) * (1.0 - t)
    )
    return IpsCoefficients(
        c_k=weights,
        f_cap_k=b - f_k,
        g_cap_k=b - g_k,
        h_cap_k=2.0 * big_b * t + h_k,
        x_k=x,
        y_k=y,
        f_k=f_k,
        g_k=g_k,
        h_k=h_k,
        n_k=n_k,
        a=a,
        b=b,
    )


def ips_click_probability(p: IpsParams) -> float:
    """Probability that both tap detectors click."""
    coeffs = ips_coefficients(p)
    det = coeffs.f_cap_k * coeffs.g_cap_k - coeffs.h_cap_k**2
    # Normalization of the conditional Wigner function: each Gaussian term
    # integrates to pi^2/(Fk Gk - Hk^2), so Int W = 1 fixes p11.
    p11 = 4.0 * float(np.sum(coeffs.c_k / det))
    if p11 < -1e-12:
        raise ValueError("joint click probability came out negative")
    # exact cancellation at r = 0 can leave roundoff of either sign
    return max(p11, 0.0)


def ips_corr_primitives(p: IpsParams, eta: float, alpha: complex, beta: complex):
    """Per-term and assembled no-click probabilities plus the correlation E.

    Returns (contributions, corr_i, corr_g, corr_y, corr_e) where
    contributions is a list of per-term (I_k, G_k, Y_k) tuples before the
    Ck/p11 weighting.
    """
    if not 0.0 < eta <= 1.0:
        raise ValueError(f"eta must be in (0, 1], got {eta}")
    return _ips_primitives_raw(p, eta, complex(alpha), complex(beta))


def _ips_primitives_raw(p: IpsParams, eta: float, alpha: complex, beta: complex):
    coeffs = ips_coefficients(p)
    p11 = ips_click_probability(p)
    if p11 <= 0.0:
        raise ValueError("conditioning degenerate: both-click probability is zero")
    delta = 2.0 * eta / (2.0 - eta)
    sa, sb = abs(alpha) ** 2, abs(beta) ** 2
    cross = 2.0 * (alpha * beta).real

    contributions = []
    corr_i = corr_g = corr_y = 0.0
    for k in range(K_TERMS):
        fk, gk, hk = coeffs.f_cap_k[k], coeffs.g_cap_k[k], coeffs.h_cap_k[k]
        det = fk * gk - hk**2
        m = delta**2 / ((fk + delta) * (gk + delta) - hk**2)
        f_tilde = delta - (fk + delta) * m
        g_tilde = delta - (gk + delta) * m
        h_tilde = hk * m
        term_i = (4.0 * m / eta**2) * exp(-g_tilde * sa - f_tilde * sb + h_tilde * cross)
        ga = gk * (fk + delta) - hk**2
        term_g = (4.0 * delta / (ga * eta)) * exp(-det * delta * sa / ga)
        gb = fk * (gk + delta) - hk**2
        term_y = (4.0 * delta / (gb * eta)) * exp(-det * delta * sb / gb)
        contributions.append((term_i, term_g, term_y))
        weight = coeffs.c_k[k] / p11
        corr_i += weight * term_i
        corr_g += weight * term_g
        corr_y += weight * term_y

    corr_e = 1.0 + 4.0 * corr_i - 2.0 * (corr_g + corr_y)
    return contributions, corr_i, corr_g, corr_y, corr_e
