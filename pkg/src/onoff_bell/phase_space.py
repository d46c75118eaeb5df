"""Two-mode Gaussian phase-space algebra.

Every Wigner function handled by this package is either a two-mode
Gaussian of the form

    c * exp{-F|z - mu|^2 - G|w - nu|^2 + H[(z - mu)(w - nu) + c.c.]}

with real F, G, H, or such a Gaussian multiplied by a polynomial in
(z, z*, w, w*) of total degree at most 4.  Overlap traces

    Tr[O1 O2] = pi^2 * Int d^2z d^2w  W[O1](z, w) W[O2](z, w)

are evaluated in closed form by completing the square and taking
Gaussian moments of the polynomial factor.

In real coordinates z = x1 + i*y1, w = x2 + i*y2 the exponent splits
into two 2x2 blocks, [[F, -H], [-H, G]] for (x1, x2) and
[[F, H], [H, G]] for (y1, y2); both have determinant F*G - H^2, which
must be positive for an integrable two-mode kernel.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np

MAX_POLY_DEGREE = 4


class NonConvergentKernelError(ValueError):
    """Joint Gaussian exponent is not negative definite."""


@dataclass(frozen=True)
class GaussianKernel:
    """Two-mode Gaussian phase-space function.

    A one-mode kernel is represented with coeff_g = coeff_h = 0 and
    center_w = 0; the flat factor 1/pi of the unmeasured mode must be
    folded into the prefactor by the caller.
    """

    prefactor: float
    coeff_f: float
    coeff_g: float = 0.0
    coeff_h: float = 0.0
    center_z: complex = 0j
    center_w: complex = 0j

    def __post_init__(self):
        for name in ("prefactor", "coeff_f", "coeff_g", "coeff_h"):
            value = getattr(self, name)
            if isinstance(value, complex) and value.imag != 0.0:
                raise ValueError(f"{name} must be real, got {value!r}")
            object.__setattr__(self, name, float(np.real(value)))
        object.__setattr__(self, "center_z", complex(self.center_z))
        object.__setattr__(self, "center_w", complex(self.center_w))

    @property
    def is_normalizable(self) -> bool:
        return (
            self.coeff_f > 0
            and self.coeff_g > 0
            and self.coeff_f * self.coeff_g - self.coeff_h**2 > 0
        )


@dataclass(frozen=True)
class PolyGaussian:
    """Polynomial times Gaussian: sum of coef * z^i z*^j w^k w*^l over base.

    The polynomial is in the unshifted variables (z, z*, w, w*), not in
    the center-shifted ones.
    """

    base: GaussianKernel
    poly: dict = field(default_factory=lambda: {(0, 0, 0, 0): 1.0})

    def __post_init__(self):
        cleaned = {}
        for exps, coef in self.poly.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != 4 or any(e < 0 for e in exps):
                raise ValueError(f"bad monomial exponents {exps}")
            if sum(exps) > MAX_POLY_DEGREE:
                raise ValueError(
                    f"monomial {exps} exceeds supported degree {MAX_POLY_DEGREE}"
                )
            cleaned[exps] = complex(coef)
        object.__setattr__(self, "poly", cleaned)


def _blocks(k: GaussianKernel):
    """Real quadratic-form blocks and centers of a kernel's exponent."""
    ax = np.array([[k.coeff_f, -k.coeff_h], [-k.coeff_h, k.coeff_g]])
    ay = np.array([[k.coeff_f, k.coeff_h], [k.coeff_h, k.coeff_g]])
    ux = np.array([k.center_z.real, k.center_w.real])
    uy = np.array([k.center_z.imag, k.center_w.imag])
    return ax, ay, ux, uy


# Each complex variable as a linear combination of the real coordinates
# (x1, x2, y1, y2) indexed 0..3.
_VAR_EXPANSION = (
    ((1.0, 0), (1j, 2)),   # z
    ((1.0, 0), (-1j, 2)),  # z*
    ((1.0, 1), (1j, 3)),   # w
    ((1.0, 1), (-1j, 3)),  # w*
)


def _real_moment(idx, mean, cov):
    """E[prod_i u_{idx_i}] for a real Gaussian via the mean/pairing recursion."""
    if not idx:
        return 1.0
    head, rest = idx[0], idx[1:]
    total = mean[head] * _real_moment(rest, mean, cov)
    for pos in range(len(rest)):
        total += cov[head, rest[pos]] * _real_moment(rest[:pos] + rest[pos + 1:], mean, cov)
    return total


def _complex_monomial_moment(exps, mean, cov):
    """E[z^i z*^j w^k w*^l] under a real 4D Gaussian (mean, cov)."""
    factors = []
    for var, power in enumerate(exps):
        factors.extend([_VAR_EXPANSION[var]] * power)
    terms = {(): 1.0 + 0j}
    for factor in factors:
        expanded = defaultdict(complex)
        for idx, coef in terms.items():
            for cf, var_idx in factor:
                key = tuple(sorted(idx + (var_idx,)))
                expanded[key] += coef * cf
        terms = expanded
    return sum(coef * _real_moment(idx, mean, cov) for idx, coef in terms.items())


def _combined_gaussian(base1: GaussianKernel, base2: GaussianKernel):
    """Complete the square for the product of two kernels.

    Returns (mean4, cov4, log_const, gauss_integral) where gauss_integral
    is Int d^4u exp{-(u-m)^T M (u-m)}.
    """
    a1x, a1y, u1x, u1y = _blocks(base1)
    a2x, a2y, u2x, u2y = _blocks(base2)
    mx = a1x + a2x
    my = a1y + a2y
    for label, m in (("x", mx), ("y", my)):
        eigs = np.linalg.eigvalsh(m)
        if eigs.min() <= 0:
            raise NonConvergentKernelError(
                f"joint exponent not negative definite in the {label}-block: "
                f"F1={base1.coeff_f}, G1={base1.coeff_g}, H1={base1.coeff_h}, "
                f"F2={base2.coeff_f}, G2={base2.coeff_g}, H2={base2.coeff_h}"
            )
    bx = a1x @ u1x + a2x @ u2x
    by = a1y @ u1y + a2y @ u2y
    mean_x = np.linalg.solve(mx, bx)
    mean_y = np.linalg.solve(my, by)
    log_const = (
        mean_x @ mx @ mean_x
        + mean_y @ my @ mean_y
        - u1x @ a1x @ u1x
        - u1y @ a1y @ u1y
        - u2x @ a2x @ u2x
        - u2y @ a2y @ u2y
    )
    gauss_integral = np.pi**2 / np.sqrt(np.linalg.det(mx) * np.linalg.det(my))
    mean = np.array([mean_x[0], mean_x[1], mean_y[0], mean_y[1]])
    cov = np.zeros((4, 4))
    cov[np.ix_([0, 1], [0, 1])] = np.linalg.inv(mx) / 2.0
    cov[np.ix_([2, 3], [2, 3])] = np.linalg.inv(my) / 2.0
    return mean, cov, log_const, gauss_integral


def gaussian_pair_trace(k1, k2: GaussianKernel) -> float:
    """pi^2 * Int W1 W2 in closed form; k1 may carry a polynomial factor.

    This is the phase-space trace rule: for Wigner functions of two
    operators the result equals Tr[O1 O2].
    """
    if isinstance(k1, GaussianKernel):
        k1 = PolyGaussian(base=k1)
    mean, cov, log_const, gauss_integral = _combined_gaussian(k1.base, k2)
    poly_mean = sum(
        coef * _complex_monomial_moment(exps, mean, cov)
        for exps, coef in k1.poly.items()
    )
    value = (
        np.pi**2
        * k1.base.prefactor
        * k2.prefactor
        * np.exp(log_const)
        * gauss_integral
        * poly_mean
    )
    return float(np.real(value))


def poly_gaussian_moments(base: GaussianKernel, monomial) -> complex:
    """Exact moment of z^i z*^j w^k w*^l under the normalized Gaussian weight."""
    exps = tuple(int(e) for e in monomial)
    if len(exps) != 4 or any(e < 0 for e in exps):
        raise ValueError(f"bad monomial exponents {exps}")
    if sum(exps) > MAX_POLY_DEGREE:
        raise ValueError(f"monomial degree {sum(exps)} unsupported (max {MAX_POLY_DEGREE})")
    one_mode = base.coeff_g == 0.0 and base.coeff_h == 0.0
    if one_mode:
        if exps[2] or exps[3]:
            raise ValueError("one-mode kernel has no w-moments")
        if base.coeff_f <= 0:
            raise NonConvergentKernelError("kernel not normalizable: coeff_f <= 0")
        var = 1.0 / (2.0 * base.coeff_f)
        mean = np.array([base.center_z.real, 0.0, base.center_z.imag, 0.0])
        cov = np.diag([var, 0.0, var, 0.0])
    else:
        if not base.is_normalizable:
            raise NonConvergentKernelError(
                f"kernel not normalizable: F={base.coeff_f}, G={base.coeff_g}, "
                f"H={base.coeff_h}"
            )
        ax, ay, ux, uy = _blocks(base)
        mean = np.array([ux[0], ux[1], uy[0], uy[1]])
        cov = np.zeros((4, 4))
        cov[np.ix_([0, 1], [0, 1])] = np.linalg.inv(ax) / 2.0
        cov[np.ix_([2, 3], [2, 3])] = np.linalg.inv(ay) / 2.0
    return complex(_complex_monomial_moment(exps, mean, cov))


def identity_kernel() -> GaussianKernel:
    """Wigner function of the two-mode identity, W = pi^{-2}."""
    return GaussianKernel(prefactor=np.pi**-2, coeff_f=0.0, coeff_g=0.0)
