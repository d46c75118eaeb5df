"""Maximization of the Bell parameter and efficiency thresholds.

A coarse grid scan over the scheme parameter (and optional kappa and
state-parameter axes) is followed by a derivative-free simplex
refinement of -|B|.  Refinement is monotone: the returned point is never
worse than the best grid sample.  Ties within the tolerance are broken
toward smaller |J| so repeated runs are reproducible.

threshold_eta locates the efficiency below which |B| <= 2 by bisection,
either with the displacement amplitude re-optimized at every eta (the
scheme and kappa stay fixed) or with the whole quadruple frozen at its
eta = 1 optimum.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from itertools import product

import numpy as np

from .bell import DisplacementQuad, QuadScheme, bell_parameter
from .detector import DetectorParams
from .ips import IpsParams
from .states import StateSpec

PROTOCOL_REOPTIMIZE = "reoptimize"
PROTOCOL_FIXED = "fixed"

# Simplex coefficients: reflect, expand, contract, shrink.
_REFLECT = 1.0
_EXPAND = 2.0
_CONTRACT = 0.5
_SHRINK = 0.5


@dataclass(frozen=True)
class GridAxis:
    lo: float
    hi: float
    steps: int

    def __post_init__(self):
        if self.steps < 3:
            raise ValueError(f"grid needs at least 3 steps, got {self.steps}")
        if not self.hi > self.lo:
            raise ValueError(f"empty grid range [{self.lo}, {self.hi}]")

    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.steps)

    @property
    def spacing(self) -> float:
        return (self.hi - self.lo) / (self.steps - 1)

    def clamp(self, x: float) -> float:
        return min(max(x, self.lo), self.hi)


@dataclass(frozen=True)
class SearchConfig:
    scheme: QuadScheme
    j_grid: GridAxis
    kappa_grid: GridAxis | None = None
    r_grid: GridAxis | None = None
    phi_grid: GridAxis | None = None
    refine_tol: float = 1e-6
    max_iters: int = 400

    def __post_init__(self):
        if self.refine_tol <= 0.0:
            raise ValueError("refine_tol must be > 0")
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")


@dataclass(frozen=True)
class SearchResult:
    quad: DisplacementQuad
    bell_value: float
    params: dict
    violated: bool
    flat: bool = False

    @property
    def abs_bell(self) -> float:
        return abs(self.bell_value)


def _axes(config: SearchConfig):
    axes = [("j", config.j_grid)]
    for name, grid in (("kappa", config.kappa_grid), ("r", config.r_grid),
                       ("phi", config.phi_grid)):
        if grid is not None:
            axes.append((name, grid))
    return axes


def _evaluator(state, det: DetectorParams, config: SearchConfig, axes):
    """Map an axis-value vector to (signed B, quad, params dict)."""

    def evaluate(x):
        params = {
            name: grid.clamp(float(v)) for (name, grid), v in zip(axes, x)
        }
        scheme = config.scheme
        if "kappa" in params:
            scheme = dataclasses.replace(scheme, kappa=params["kappa"])
        current = state
        if "r" in params:
            current = dataclasses.replace(current, r=params["r"])
        if "phi" in params:
            current = dataclasses.replace(current, phi=params["phi"])
        quad = scheme.quad_at(params["j"])
        return bell_parameter(current, det, quad), quad, params

    return evaluate


def _simplex_refine(objective, x0, steps, tol, max_iters):
    """Hand-rolled polytope descent on the given objective (minimized)."""
    dim = len(x0)
    points = [np.asarray(x0, dtype=float)]
    for i in range(dim):
        shifted = points[0].copy()
        shifted[i] += steps[i]
        points.append(shifted)
    values = [objective(p) for p in points]

    for _ in range(max_iters):
        order = np.argsort(values)
        points = [points[i] for i in order]
        values = [values[i] for i in order]
        if values[-1] - values[0] < tol:
            break
        centroid = np.mean(points[:-1], axis=0)
        reflected = centroid + _REFLECT * (centroid - points[-1])
        f_reflected = objective(reflected)
        if f_reflected < values[0]:
            expanded = centroid + _EXPAND * (reflected - centroid)
            f_expanded = objective(expanded)
            if f_expanded < f_reflected:
                points[-1], values[-1] = expanded, f_expanded
            else:
                points[-1], values[-1] = reflected, f_reflected
        elif f_reflected < values[-2]:
            points[-1], values[-1] = reflected, f_reflected
        else:
            contracted = centroid + _CONTRACT * (points[-1] - centroid)
            f_contracted = objective(contracted)
            if f_contracted < values[-1]:
                points[-1], values[-1] = contracted, f_contracted
            else:
                best = points[0]
                points = [best] + [
                    best + _SHRINK * (p - best) for p in points[1:]
                ]
                values = [values[0]] + [objective(p) for p in points[1:]]
    order = np.argsort(values)
    return points[order[0]], values[order[0]]


def maximize_bell(state, det: DetectorParams, config: SearchConfig) -> SearchResult:
    """Grid scan plus simplex refinement of |B|; deterministic given config."""
    axes = _axes(config)
    evaluate = _evaluator(state, det, config, axes)

    best_x = None
    best_abs = -np.inf
    grid_min = np.inf
    for combo in product(*(grid.values() for _, grid in axes)):
        value, _, _ = evaluate(combo)
        magnitude = abs(value)
        grid_min = min(grid_min, magnitude)
        better = magnitude > best_abs + config.refine_tol
        tie = (
            abs(magnitude - best_abs) <= config.refine_tol
            and best_x is not None
            and abs(combo[0]) < abs(best_x[0])
        )
        if better or tie:
            best_abs = magnitude
            best_x = np.asarray(combo, dtype=float)

    if best_abs - grid_min < config.refine_tol:
        value, quad, params = evaluate(best_x)
        return SearchResult(
            quad=quad,
            bell_value=value,
            params=params,
            violated=abs(value) > 2.0,
            flat=True,
        )

    steps = [grid.spacing for _, grid in axes]
    refined_x, refined_neg = _simplex_refine(
        lambda x: -abs(evaluate(x)[0]),
        best_x,
        steps,
        config.refine_tol,
        config.max_iters,
    )
    if -refined_neg < best_abs:
        refined_x = best_x
    value, quad, params = evaluate(refined_x)
    return SearchResult(
        quad=quad, bell_value=value, params=params, violated=abs(value) > 2.0
    )


def threshold_eta(
    state,
    config: SearchConfig,
    protocol: str = PROTOCOL_REOPTIMIZE,
    fixed_quad: DisplacementQuad | None = None,
    eta_lo: float = 0.5,
    eta_hi: float = 1.0,
    tol: float = 5e-4,
) -> float | None:
    """Efficiency below which |B| <= 2; None when there is no violation at all.

    With protocol "reoptimize" the displacement amplitude (and any other
    configured axes) is re-optimized at every eta; with "fixed" the quadruple
    is frozen (at fixed_quad, or at the eta = 1 optimum when not given).
    """
    if protocol not in (PROTOCOL_REOPTIMIZE, PROTOCOL_FIXED):
        raise ValueError(f"unknown protocol {protocol!r}")
    if not 0.0 < eta_lo < eta_hi <= 1.0:
        raise ValueError("need 0 < eta_lo < eta_hi <= 1")

    if protocol == PROTOCOL_FIXED:
        quad = fixed_quad
        if quad is None:
            quad = maximize_bell(state, DetectorParams(eta_hi), config).quad

        def best_abs(eta: float) -> float:
            return abs(bell_parameter(state, DetectorParams(eta), quad))
    else:

        def best_abs(eta: float) -> float:
            return maximize_bell(state, DetectorParams(eta), config).abs_bell

    if best_abs(eta_hi) <= 2.0:
        return None
    while best_abs(eta_lo) > 2.0:
        eta_lo *= 0.75
        if eta_lo < 0.05:
            raise ValueError("violation persists down to eta = 0.05; no threshold")

    lo, hi = eta_lo, eta_hi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if best_abs(mid) > 2.0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)
