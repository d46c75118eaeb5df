"""Bell-inequality violation with displaced on/off photodetection.

Closed-form CHSH/CH quantities for single-photon and two-photon
superpositions, the twin beam, and its photon-subtracted version,
measured by displaced on/off detectors with non-unit efficiency and
dark counts, all cross-checked by a truncated-Fock-space brute force.
"""

from .bell import (
    CIRELSON,
    KAPPA_DEFAULT,
    DisplacementQuad,
    QuadScheme,
    bell_max_bound,
    bell_parameter,
    bell_small_d,
    ch_value,
    correlation,
    correlation_primitives,
)
from .detector import (
    POISSONIAN,
    THERMAL,
    DetectorParams,
    PovmWeights,
    dark_scaling_map,
    povm_fock_weights,
    povm_wigner_kernel,
)
from .ips import IpsParams, ips_click_probability, ips_corr_primitives
from .oracle import (
    FockTruncation,
    TwoModeDensity,
    displacement_matrix,
    ips_oracle_state,
    operator_bound_check,
    oracle_bell,
    oracle_correlation,
    oracle_primitives,
)
from .phase_space import GaussianKernel, PolyGaussian, gaussian_pair_trace
from .search import (
    GridAxis,
    SearchConfig,
    SearchResult,
    maximize_bell,
    threshold_eta,
)
from .states import STATE_NAMES, StateSpec, corr_primitives, wigner_of

__version__ = "0.1.0"

__all__ = [
    "CIRELSON",
    "KAPPA_DEFAULT",
    "POISSONIAN",
    "STATE_NAMES",
    "THERMAL",
    "DetectorParams",
    "DisplacementQuad",
    "FockTruncation",
    "GaussianKernel",
    "GridAxis",
    "IpsParams",
    "PolyGaussian",
    "PovmWeights",
    "QuadScheme",
    "SearchConfig",
    "SearchResult",
    "StateSpec",
    "TwoModeDensity",
    "bell_max_bound",
    "bell_parameter",
    "bell_small_d",
    "ch_value",
    "corr_primitives",
    "correlation",
    "correlation_primitives",
    "dark_scaling_map",
    "displacement_matrix",
    "gaussian_pair_trace",
    "ips_click_probability",
    "ips_corr_primitives",
    "ips_oracle_state",
    "maximize_bell",
    "operator_bound_check",
    "oracle_bell",
    "oracle_correlation",
    "oracle_primitives",
    "povm_fock_weights",
    "povm_wigner_kernel",
    "threshold_eta",
    "wigner_of",
]
