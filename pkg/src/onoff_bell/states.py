"""Analytic two-mode state families and their correlation primitives.

Families: the single-photon superpositions sin(phi)|10> + cos(phi)|01>
and sin(phi)|00> + cos(phi)|11> (with the balanced phi = pi/4 cases as
the four Bell states), the two-photon superposition (|20> + |02>)/sqrt(2),
and the twin beam sum_n tanh^n(r) |nn> / cosh(r).

For each family this module provides the exact Wigner function (a
polynomial times Gaussian) and the no-click probabilities at D = 0:

    I(alpha, beta) = <Pi_0(alpha) x Pi_0(beta)>
    G(alpha)       = <Pi_0(alpha) x I>
    Y(beta)        = <I x Pi_0(beta)>

The superposition closed forms are assembled from the matrix elements
K_mn(alpha) = <m| D(alpha) Pi_0 D^+(alpha) |n> of the displaced no-click
element, obtained from its normally ordered form :exp{-eta (a+ - a*)(a - a)}:

    K_00 = e^{-eta|a|^2}
    K_01 = -eta a* e^{-eta|a|^2}                      (K_10 = K_01^*)
    K_11 = (1 - eta + eta^2 |a|^2) e^{-eta|a|^2}
    K_02 = eta^2 a*^2 / sqrt(2) e^{-eta|a|^2}         (K_20 = K_02^*)
    K_22 = [(1-eta)^2 + 2 eta^2 (1-eta)|a|^2 + eta^4 |a|^4 / 2] e^{-eta|a|^2}

The twin-beam forms are pure Gaussian integrals:

    I = (4 M / eta^2) exp{-Ft (|a|^2 + |b|^2) + Ht (ab + a*b*)}
    M = Delta^2 / (4(A^2 - B^2) + 4 A Delta + Delta^2)
    Ft = Delta - (2A + Delta) M,   Ht = 2 B M
    G(a) = Y(a) = (g / eta) exp{-g |a|^2},  g = 2 Delta / (2(A^2 - B^2) + A Delta)

with A = cosh(2r), B = sinh(2r), Delta = 2 eta / (2 - eta).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import cos, cosh, exp, pi, sin, sinh, sqrt

import numpy as np

from .phase_space import GaussianKernel, PolyGaussian

BELL_PSI = "bell-psi"
BELL_PHI = "bell-phi"
UNBAL_PSI = "unbal-psi"
UNBAL_PHI = "unbal-phi"
TWO_PHOTON = "two-photon"
TWB = "twb"

_PSI_KINDS = (BELL_PSI, UNBAL_PSI)
_PHI_KINDS = (BELL_PHI, UNBAL_PHI)

# CLI / JSON names.
STATE_NAMES = (
    "bell-psi-plus",
    "bell-psi-minus",
    "bell-phi-plus",
    "bell-phi-minus",
    "unbal-psi",
    "unbal-phi",
    "two-photon",
    "twb",
)


@dataclass(frozen=True)
class StateSpec:
    kind: str
    sign: int = +1
    phi: float | None = None
    r: float | None = None

    def __post_init__(self):
        if self.kind not in (BELL_PSI, BELL_PHI, UNBAL_PSI, UNBAL_PHI, TWO_PHOTON, TWB):
            raise ValueError(f"unknown state kind {self.kind!r}")
        if self.sign not in (+1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.kind in (UNBAL_PSI, UNBAL_PHI):
            if self.phi is None or not 0.0 <= self.phi <= pi / 2:
                raise ValueError("phi must lie in [0, pi/2]")
        if self.kind == TWB:
            if self.r is None or self.r < 0.0:
                raise ValueError("twb needs squeezing r >= 0")

    @classmethod
    def bell_psi(cls, sign: int = +1) -> "StateSpec":
        return cls(kind=BELL_PSI, sign=sign)

    @classmethod
    def bell_phi(cls, sign: int = +1) -> "StateSpec":
        return cls(kind=BELL_PHI, sign=sign)

    @classmethod
    def unbal_psi(cls, phi: float) -> "StateSpec":
        return cls(kind=UNBAL_PSI, phi=phi)

    @classmethod
    def unbal_phi(cls, phi: float) -> "StateSpec":
        return cls(kind=UNBAL_PHI, phi=phi)

    @classmethod
    def two_photon(cls) -> "StateSpec":
        return cls(kind=TWO_PHOTON)

    @classmethod
    def twb(cls, r: float) -> "StateSpec":
        return cls(kind=TWB, r=r)

    @classmethod
    def from_name(cls, name: str, phi: float | None = None, r: float | None = None) -> "StateSpec":
        if name == "bell-psi-plus":
            return cls.bell_psi(+1)
        if name == "bell-psi-minus":
            return cls.bell_psi(-1)
        if name == "bell-phi-plus":
            return cls.bell_phi(+1)
        if name == "bell-phi-minus":
            return cls.bell_phi(-1)
        if name == "unbal-psi":
            if phi is None:
                raise ValueError("unbal-psi needs --phi")
            return cls.unbal_psi(phi)
        if name == "unbal-phi":
            if phi is None:
                raise ValueError("unbal-phi needs --phi")
            return cls.unbal_phi(phi)
        if name == "two-photon":
            return cls.two_photon()
        if name == "twb":
            if r is None:
                raise ValueError("twb needs --r")
            return cls.twb(r)
        raise ValueError(f"unknown state name {name!r}")

    def amplitudes(self) -> tuple[float, float]:
        """(s, c) amplitudes of the superposition families; c carries the sign."""
        if self.kind in (BELL_PSI, BELL_PHI):
            return 1.0 / sqrt(2.0), self.sign / sqrt(2.0)
        if self.kind in (UNBAL_PSI, UNBAL_PHI):
            return sin(self.phi), cos(self.phi)
        raise ValueError(f"{self.kind} is not a two-amplitude superposition")


@dataclass(frozen=True)
class TwbCoefficients:
    big_a: float  # cosh(2r)
    big_b: float  # sinh(2r)

    def __post_init__(self):
        if self.big_a < 1.0:
            raise ValueError("cosh(2r) must be >= 1")
        if abs(self.big_a**2 - self.big_b**2 - 1.0) > 1e-12 * max(1.0, self.big_a**2):
            raise ValueError("hyperbolic identity A^2 - B^2 = 1 violated")


def twb_coefficients(r: float) -> TwbCoefficients:
    return TwbCoefficients(big_a=cosh(2.0 * r), big_b=sinh(2.0 * r))


# --- Wigner functions ------------------------------------------------------

def wigner_of(state: StateSpec) -> PolyGaussian:
    """Exact Wigner function; integrates to 1 over d^2z d^2w."""
    if state.kind == TWB:
        coeffs = twb_coefficients(state.r)
        base = GaussianKernel(
            prefactor=4.0 / pi**2,
            coeff_f=2.0 * coeffs.big_a,
            coeff_g=2.0 * coeffs.big_a,
            coeff_h=2.0 * coeffs.big_b,
        )
        return PolyGaussian(base=base)

    base = GaussianKernel(prefactor=4.0 / pi**2, coeff_f=2.0, coeff_g=2.0)
    if state.kind == TWO_PHOTON:
        # (1/2)[L_2(4|z|^2) + L_2(4|w|^2) + 8(z^2 w*^2 + z*^2 w^2)]
        poly = {
            (0, 0, 0, 0): 1.0,
            (1, 1, 0, 0): -4.0,
            (0, 0, 1, 1): -4.0,
            (2, 2, 0, 0): 4.0,
            (0, 0, 2, 2): 4.0,
            (2, 0, 0, 2): 4.0,
            (0, 2, 2, 0): 4.0,
        }
        return PolyGaussian(base=base, poly=poly)

    s, c = state.amplitudes()
    if state.kind in _PSI_KINDS:
        poly = {
            (0, 0, 0, 0): -1.0,
            (1, 1, 0, 0): 4.0 * s * s,
            (0, 0, 1, 1): 4.0 * c * c,
            (1, 0, 0, 1): 4.0 * s * c,
            (0, 1, 1, 0): 4.0 * s * c,
        }
    else:
        poly = {
            (0, 0, 0, 0): 1.0,
            (1, 1, 0, 0): -4.0 * c * c,
            (0, 0, 1, 1): -4.0 * c * c,
            (1, 1, 1, 1): 16.0 * c * c,
            (1, 0, 1, 0): 4.0 * s * c,
            (0, 1, 0, 1): 4.0 * s * c,
        }
    return PolyGaussian(base=base, poly=poly)


# --- closed-form correlation primitives at D = 0 ---------------------------

def _k11_bracket(eta: float, sq: float) -> float:
    return 1.0 - eta + eta**2 * sq


def _k22_bracket(eta: float, sq: float) -> float:
    return (1.0 - eta) ** 2 + 2.0 * eta**2 * (1.0 - eta) * sq + eta**4 * sq**2 / 2.0


def _primitives_raw(state: StateSpec, eta: float, alpha: complex, beta: complex):
    """(I, G, Y) without the eta range check (internal use)."""
    sa, sb = abs(alpha) ** 2, abs(beta) ** 2

    if state.kind == TWB:
        coeffs = twb_coefficients(state.r)
        big_a, big_b = coeffs.big_a, coeffs.big_b
        det_ab = big_a**2 - big_b**2
        delta = 2.0 * eta / (2.0 - eta)
        m = delta**2 / (4.0 * det_ab + 4.0 * big_a * delta + delta**2)
        f_tilde = delta - (2.0 * big_a + delta) * m
        h_tilde = 2.0 * big_b * m
        corr_i = (4.0 * m / eta**2) * exp(
            -f_tilde * (sa + sb) + h_tilde * 2.0 * (alpha * beta).real
        )
        g_coef = 2.0 * delta / (2.0 * det_ab + big_a * delta)
        g_amp = g_coef / eta
        return corr_i, g_amp * exp(-g_coef * sa), g_amp * exp(-g_coef * sb)

    if state.kind == TWO_PHOTON:
        env = exp(-eta * (sa + sb))
        corr_i = 0.5 * env * (
            _k22_bracket(eta, sa)
            + _k22_bracket(eta, sb)
            + eta**4 * (alpha**2 * np.conj(beta) ** 2).real
        )
        corr_g = 0.5 * exp(-eta * sa) * (1.0 + _k22_bracket(eta, sa))
        corr_y = 0.5 * exp(-eta * sb) * (1.0 + _k22_bracket(eta, sb))
        return corr_i, corr_g, corr_y

    s, c = state.amplitudes()
    env = exp(-eta * (sa + sb))
    if state.kind in _PSI_KINDS:
        corr_i = env * (
            s * s * _k11_bracket(eta, sa)
            + c * c * _k11_bracket(eta, sb)
            + 2.0 * s * c * eta**2 * (alpha * np.conj(beta)).real
        )
        corr_g = exp(-eta * sa) * (s * s * _k11_bracket(eta, sa) + c * c)
        corr_y = exp(-eta * sb) * (c * c * _k11_bracket(eta, sb) + s * s)
    else:
        corr_i = env * (
            s * s
            + c * c * _k11_bracket(eta, sa) * _k11_bracket(eta, sb)
            + 2.0 * s * c * eta**2 * (alpha * beta).real
        )
        corr_g = exp(-eta * sa) * (s * s + c * c * _k11_bracket(eta, sa))
        corr_y = exp(-eta * sb) * (s * s + c * c * _k11_bracket(eta, sb))
    return corr_i, corr_g, corr_y


def corr_primitives(state: StateSpec, eta: float, alpha: complex, beta: complex):
    """No-click probabilities (I, G, Y) at D = 0, each in [0, 1]."""
    if not 0.0 < eta <= 1.0:
        raise ValueError(f"eta must be in (0, 1], got {eta}")
    return _primitives_raw(state, eta, complex(alpha), complex(beta))


def unbalanced_primitives(state: StateSpec, eta: float, alpha: complex, beta: complex):
    """(I, G, Y) for the unbalanced superposition families."""
    if state.kind not in (UNBAL_PSI, UNBAL_PHI):
        raise ValueError("unbalanced_primitives expects an unbal-psi/unbal-phi state")
    return corr_primitives(state, eta, alpha, beta)
