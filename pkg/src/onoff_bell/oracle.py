"""Independent truncated-Fock-space brute force.

States, displaced POVMs, and all no-click probabilities are built by
plain matrix algebra on a truncated Fock space and used to arbitrate
every closed form in the package.  Nothing here shares code with the
phase-space engine or the analytic formulas.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, cosh, sqrt, tanh

import numpy as np
from scipy.linalg import expm, eigvalsh

from .detector import DetectorParams, povm_fock_weights
from .ips import IpsParams
from .states import TWB, StateSpec

DEFAULT_N_MAX = 32
IPS_N_MAX = 20


class CutoffError(ValueError):
    """Truncation too small for the requested computation."""


@dataclass(frozen=True)
class FockTruncation:
    n_max: int = DEFAULT_N_MAX
    tail_bound: float = 1e-10

    def __post_init__(self):
        if self.n_max < 1:
            raise ValueError("n_max must be >= 1")


@dataclass(frozen=True)
class TwoModeDensity:
    """Density matrix indexed (n1, n2; m1, m2), flattened to (dim^2, dim^2)."""

    matrix: np.ndarray
    n_max: int

    def __post_init__(self):
        dim = self.n_max + 1
        mat = np.asarray(self.matrix, dtype=complex).reshape(dim * dim, dim * dim)
        object.__setattr__(self, "matrix", mat)
        if np.max(np.abs(mat - mat.conj().T)) > 1e-12:
            raise ValueError("density matrix not Hermitian")
        tr = float(np.trace(mat).real)
        if not 0.0 < tr <= 1.0 + 1e-10:
            raise ValueError(f"trace {tr} outside (0, 1]")
        if eigvalsh(mat).min() < -1e-10:
            raise ValueError("density matrix not positive semidefinite")


def displacement_matrix(alpha: complex, n_max: int) -> np.ndarray:
    """<m|D(alpha)|n> on the truncated space, unitary by construction.

    Built as expm of the truncated generator alpha a+ - alpha* a; accurate
    while |alpha|^2 e / n_max < 1.
    """
    if abs(alpha) ** 2 * np.e / n_max >= 1.0:
        raise CutoffError(
            f"cutoff {n_max} too small for displacement |alpha| = {abs(alpha):.3f}"
        )
    dim = n_max + 1
    adag = np.diag(np.sqrt(np.arange(1, dim)), k=-1)
    gen = alpha * adag - np.conj(alpha) * adag.conj().T
    return expm(gen)


def fock_amplitudes(state: StateSpec, n_max: int, tail_bound: float = 1e-10) -> np.ndarray:
    """Pure-state coefficient matrix psi[m, n] on the truncated two-mode space."""
    dim = n_max + 1
    psi = np.zeros((dim, dim), dtype=complex)
    if state.kind == TWB:
        lam = tanh(state.r) ** np.arange(dim) / cosh(state.r)
        tail = 1.0 - float(np.sum(lam**2))
        if tail > tail_bound:
            raise CutoffError(f"TWB tail {tail:.2e} exceeds bound {tail_bound:.1e}")
        np.fill_diagonal(psi, lam)
        return psi
    if state.kind == "two-photon":
        psi[2, 0] = psi[0, 2] = 1.0 / sqrt(2.0)
        return psi
    s, c = state.amplitudes()
    if state.kind in ("bell-psi", "unbal-psi"):
        psi[1, 0], psi[0, 1] = s, c
    else:
        psi[0, 0], psi[1, 1] = s, c
    return psi


def _povm_operator(det: DetectorParams, alpha: complex, n_max: int) -> np.ndarray:
    """Displaced no-click operator D(alpha) diag(w_n) D^+(alpha)."""
    weights = povm_fock_weights(det, n_max).no_click_weights
    if alpha == 0:
        return np.diag(weights).astype(complex)
    disp = displacement_matrix(alpha, n_max)
    return disp @ np.diag(weights) @ disp.conj().T


def oracle_primitives(
    state,
    det: DetectorParams,
    alpha: complex,
    beta: complex,
    trunc: FockTruncation | None = None,
):
    """(I, G, Y) by brute-force matrix algebra; accepts StateSpec or IpsParams."""
    if isinstance(state, IpsParams):
        trunc = trunc or FockTruncation(n_max=IPS_N_MAX)
        rho, _ = ips_oracle_state(state, trunc)
        return _mixed_primitives(rho, det, alpha, beta)
    trunc = trunc or FockTruncation()
    psi = fock_amplitudes(state, trunc.n_max, trunc.tail_bound)
    pa = _povm_operator(det, alpha, trunc.n_max)
    pb = _povm_operator(det, beta, trunc.n_max)
    corr_i = np.vdot(psi, pa @ psi @ pb.T).real
    corr_g = np.vdot(psi, pa @ psi).real
    corr_y = np.vdot(psi, psi @ pb.T).real
    return float(corr_i), float(corr_g), float(corr_y)


def _mixed_primitives(rho: TwoModeDensity, det: DetectorParams, alpha, beta):
    dim = rho.n_max + 1
    pa = _povm_operator(det, alpha, rho.n_max)
    pb = _povm_operator(det, beta, rho.n_max)
    mat = rho.matrix.reshape(dim, dim, dim, dim)  # (m1, m2; n1, n2)
    corr_i = np.einsum("abcd,ca,db->", mat, pa, pb).real
    corr_g = np.einsum("abcb,ca->", mat, pa).real
    corr_y = np.einsum("abad,db->", mat, pb).real
    return float(corr_i), float(corr_g), float(corr_y)


def oracle_correlation(state, det: DetectorParams, alpha, beta) -> float:
    corr_i, corr_g, corr_y = oracle_primitives(state, det, alpha, beta)
    return 1.0 + 4.0 * corr_i - 2.0 * (corr_g + corr_y)


def oracle_bell(state, det: DetectorParams, quad) -> float:
    return (
        oracle_correlation(state, det, quad.alpha, quad.beta)
        + oracle_correlation(state, det, quad.alpha_p, quad.beta)
        + oracle_correlation(state, det, quad.alpha, quad.beta_p)
        - oracle_correlation(state, det, quad.alpha_p, quad.beta_p)
    )


def ips_oracle_state(p: IpsParams, trunc: FockTruncation | None = None):
    """Conditional two-mode state after both tap detectors click, plus p11.

    The twin beam is mixed with vacuum ancillas at two beam splitters of
    transmissivity T; each ancilla Fock level n contributes the click
    weight 1 - (1 - eps)^n.  Working with the pure 4-mode vector keeps
    memory at two-mode-density scale.
    """
    trunc = trunc or FockTruncation(n_max=IPS_N_MAX)
    n_max = trunc.n_max
    if p.r > 0.8 and n_max <= 20:
        raise CutoffError("r > 0.8 needs a larger cutoff than 20 photons per mode")
    dim = n_max + 1
    lam = tanh(p.r) ** np.arange(dim) / cosh(p.r)
    tail = 1.0 - float(np.sum(lam**2))
    if tail > trunc.tail_bound:
        raise CutoffError(f"TWB tail {tail:.2e} exceeds bound {trunc.tail_bound:.1e}")

    t_amp = sqrt(p.transmissivity)
    r_amp = sqrt(1.0 - p.transmissivity)
    # split[n, k] = amplitude for |n, 0> -> |n-k, k> at one beam splitter
    split = np.zeros((dim, dim))
    for n in range(dim):
        for k in range(n + 1):
            split[n, k] = sqrt(comb(n, k)) * t_amp ** (n - k) * r_amp**k

    q = 1.0 - (1.0 - p.aps_eff) ** np.arange(dim)  # ancilla click weights
    rho = np.zeros((dim, dim, dim, dim), dtype=complex)
    p11 = 0.0
    for k in range(dim):
        for l in range(dim):
            if q[k] == 0.0 or q[l] == 0.0:
                continue
            phi = np.zeros((dim, dim))
            for n in range(max(k, l), dim):
                phi[n - k, n - l] = lam[n] * split[n, k] * split[n, l]
            weight = q[k] * q[l]
            norm = float(np.sum(phi**2))
            if norm == 0.0:
                continue
            p11 += weight * norm
            rho += weight * np.einsum("ab,cd->abcd", phi, phi.conj())
    if p11 < 1e-12:
        raise ValueError("conditioning degenerate: joint click probability below 1e-12")
    rho /= p11
    return TwoModeDensity(matrix=rho.reshape(dim**2, dim**2), n_max=n_max), float(p11)


def operator_bound_check(
    state, det: DetectorParams, quad, trunc: FockTruncation | None = None
) -> float:
    """Largest eigenvalue of the squared Bell operator on the truncated space."""
    trunc = trunc or FockTruncation()
    n_max = trunc.n_max
    dim = n_max + 1
    eye = np.eye(dim, dtype=complex)

    def obs(zeta):
        return eye - 2.0 * _povm_operator(det, zeta, n_max)

    oa, oap = obs(quad.alpha), obs(quad.alpha_p)
    ob, obp = obs(quad.beta), obs(quad.beta_p)
    bell_op = (
        np.kron(oa, ob) + np.kron(oap, ob) + np.kron(oa, obp) - np.kron(oap, obp)
    )
    return float(eigvalsh(bell_op @ bell_op).max())
