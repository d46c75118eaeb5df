"""Noisy on/off photodetector model.

The detector only distinguishes vacuum ("no click") from one-or-more
photons.  Quantum efficiency eta is modeled as a beam splitter in front
of an ideal detector; dark counts with mean D arise from a thermal or a
Poissonian (phase-averaged coherent) background on the auxiliary port,
excited to M = D/(1-eta) mean photons.

The no-click POVM element is diagonal in the Fock basis:

    thermal:     w_n = (1+D)^{-1} (1 - eta/(1+D))^n
    Poissonian:  w_n = e^{-D} (1-eta)^n L_n(-D eta / (1-eta))

and its Wigner function for a thermal background is the Gaussian

    W[Pi_0](z) = (1/pi) * 2/(2(1+D)-eta) * exp{-2 eta |z|^2 / (2(1+D)-eta)}

which reduces to Delta/(pi eta) * exp{-Delta |z|^2}, Delta = 2eta/(2-eta),
at D = 0.  The Poissonian Wigner function carries a Bessel factor and is
not Gaussian; it is exposed for tests only via poissonian_wigner_value.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .phase_space import GaussianKernel

THERMAL = "thermal"
POISSONIAN = "poissonian"

DEFAULT_N_MAX = 64
TAIL_TOLERANCE = 1e-12


class UnsupportedKernelError(ValueError):
    """Requested Wigner kernel is not Gaussian; use the Fock-weight path."""


@dataclass(frozen=True)
class DetectorParams:
    eta: float
    dark_mean: float = 0.0
    background: str = THERMAL

    def __post_init__(self):
        if not 0.0 < self.eta <= 1.0:
            raise ValueError(f"eta must be in (0, 1], got {self.eta}")
        if self.dark_mean < 0.0:
            raise ValueError(f"dark_mean must be >= 0, got {self.dark_mean}")
        if self.background not in (THERMAL, POISSONIAN):
            raise ValueError(f"unknown background {self.background!r}")
        if self.background == POISSONIAN and self.dark_mean > 0.0 and self.eta == 1.0:
            raise ValueError(
                "Poissonian background needs eta < 1 when dark_mean > 0 "
                "(auxiliary mean photon number D/(1-eta) diverges)"
            )

    @property
    def delta(self) -> float:
        """Gaussian width parameter 2*eta/(2-eta) of the D = 0 no-click kernel."""
        return 2.0 * self.eta / (2.0 - self.eta)


@dataclass(frozen=True)
class PovmWeights:
    """Diagonal Fock-basis weights of the no-click element Pi_0."""

    no_click_weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.no_click_weights, dtype=float)
        object.__setattr__(self, "no_click_weights", w)
        if np.any(w < -1e-14) or np.any(w > 1 + 1e-14):
            raise ValueError("POVM weights outside [0, 1]")

    @property
    def click_weights(self) -> np.ndarray:
        return 1.0 - self.no_click_weights


def _laguerre_values(x: float, n_max: int) -> np.ndarray:
    """L_0(x) .. L_n_max(x) by the three-term recurrence."""
    vals = np.empty(n_max + 1)
    vals[0] = 1.0
    if n_max >= 1:
        vals[1] = 1.0 - x
    for n in range(1, n_max):
        vals[n + 1] = ((2 * n + 1 - x) * vals[n] - n * vals[n - 1]) / (n + 1)
    return vals


def povm_fock_weights(det: DetectorParams, n_max: int = DEFAULT_N_MAX) -> PovmWeights:
    """Fock-basis no-click weights w_n for n = 0..n_max."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    n = np.arange(n_max + 1)
    eta, dark = det.eta, det.dark_mean
    if det.background == THERMAL:
        w = (1.0 / (1.0 + dark)) * (1.0 - eta / (1.0 + dark)) ** n
    else:
        if dark > 0.0 and eta >= 1.0:
            raise ValueError("Poissonian weights diverge at eta = 1 with dark_mean > 0")
        arg = -dark * eta / (1.0 - eta) if dark > 0.0 else 0.0
        w = np.exp(-dark) * (1.0 - eta) ** n * _laguerre_values(arg, n_max)
    return PovmWeights(no_click_weights=w)


def povm_wigner_kernel(det: DetectorParams, center: complex = 0j) -> GaussianKernel:
    """One-mode Gaussian Wigner kernel of the displaced no-click element.

    Only the thermal background (any D) and the noiseless Poissonian case
    are Gaussian; Poissonian with D > 0 raises UnsupportedKernelError.
    """
    if det.background == POISSONIAN and det.dark_mean > 0.0:
        raise UnsupportedKernelError(
            "Poissonian no-click Wigner function is non-Gaussian for D > 0; "
            "use povm_fock_weights instead"
        )
    s = 2.0 * (1.0 + det.dark_mean) - det.eta
    return GaussianKernel(
        prefactor=2.0 / (np.pi * s),
        coeff_f=2.0 * det.eta / s,
        center_z=center,
    )


def povm_pair_kernel(det: DetectorParams, alpha: complex, beta: complex) -> GaussianKernel:
    """Two-mode kernel W[Pi_0(alpha)] * W[Pi_0(beta)] (same detector on both arms)."""
    one = povm_wigner_kernel(det)
    return GaussianKernel(
        prefactor=one.prefactor**2,
        coeff_f=one.coeff_f,
        coeff_g=one.coeff_f,
        center_z=alpha,
        center_w=beta,
    )


def povm_marginal_kernel(det: DetectorParams, center: complex, mode: int) -> GaussianKernel:
    """Two-mode kernel W[Pi_0(center) x I] (mode 0) or W[I x Pi_0(center)] (mode 1).

    The flat 1/pi of the unmeasured mode is folded into the prefactor.
    """
    one = povm_wigner_kernel(det)
    if mode == 0:
        return GaussianKernel(
            prefactor=one.prefactor / np.pi, coeff_f=one.coeff_f, center_z=center
        )
    if mode == 1:
        return GaussianKernel(
            prefactor=one.prefactor / np.pi,
            coeff_f=0.0,
            coeff_g=one.coeff_f,
            center_w=center,
        )
    raise ValueError(f"mode must be 0 or 1, got {mode}")


def dark_scaling_map(det: DetectorParams):
    """(eta_eff, i_scale, gy_scale) reducing dark counts to an efficiency rescale.

    The joint no-click probability scales as I_{eta,D} = i_scale * I_{eta_eff, 0}
    and the marginals as G_{eta,D} = gy_scale * G_{eta_eff, 0}; derived for the
    thermal POVM only.
    """
    if det.background != THERMAL:
        raise UnsupportedKernelError("scaling law holds for the thermal POVM only")
    one_plus = 1.0 + det.dark_mean
    return det.eta / one_plus, one_plus**-2, one_plus**-1


def squared_no_click_efficiency(eta: float) -> float:
    """Efficiency eta(2-eta) such that Pi_0(eta)^2 = Pi_0(eta(2-eta))."""
    if not 0.0 < eta <= 1.0:
        raise ValueError(f"eta must be in (0, 1], got {eta}")
    return eta * (2.0 - eta)


def _bessel_i0(x: float) -> float:
    """Series evaluation of I_0, adequate for |x| < 8 (test-only helper)."""
    if abs(x) >= 8.0:
        raise ValueError("series evaluation of I_0 only supported for |x| < 8")
    term, total = 1.0, 1.0
    q = (x / 2.0) ** 2
    for k in range(1, 60):
        term *= q / k**2
        total += term
        if term < 1e-18 * total:
            break
    return total


def poissonian_wigner_value(det: DetectorParams, z: complex) -> float:
    """Pointwise no-click Wigner function for the Poissonian background.

    W(z) = (2 / pi(2-eta)) exp{-2(D + eta|z|^2)/(2-eta)}
           * I_0(4 |z| sqrt(eta D) / (2-eta))

    obtained by resumming the Fock weights with the bilinear Laguerre
    generating function.  Non-Gaussian for D > 0; exposed for tests.
    """
    if det.background != POISSONIAN:
        raise ValueError("detector background is not Poissonian")
    eta, dark = det.eta, det.dark_mean
    amp = (1.0 / np.pi) * 2.0 / (2.0 - eta)
    body = np.exp(-(2.0 / (2.0 - eta)) * (dark + eta * abs(z) ** 2))
    bessel = _bessel_i0(4.0 * abs(z) * np.sqrt(eta * dark) / (2.0 - eta))
    return amp * body * bessel
