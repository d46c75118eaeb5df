"""Acceptance suite: every headline quantity at its stated tolerance.

Each test prints exactly one PASS/FAIL line for its criterion.  The
frozen reference values were computed independently with the
truncated-Fock brute force before the closed forms were written.
"""

from math import pi, sqrt

import numpy as np
import pytest

from onoff_bell.bell import (
    CIRELSON,
    QuadScheme,
    bell_max_bound,
    bell_parameter,
    bell_small_d,
)
from onoff_bell.detector import (
    POISSONIAN,
    DetectorParams,
    povm_fock_weights,
)
from onoff_bell.ips import IpsParams
from onoff_bell.oracle import FockTruncation, oracle_bell, oracle_primitives
from onoff_bell.search import GridAxis, SearchConfig, maximize_bell, threshold_eta
from onoff_bell.states import StateSpec, corr_primitives

J_GRID = GridAxis(0.01, 0.5, 50)


def _config(scheme, **kwargs):
    return SearchConfig(scheme=QuadScheme(scheme), j_grid=J_GRID, **kwargs)


def _report(label: str, ok: bool, detail: str) -> None:
    print(f"acceptance {label}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, f"{label}: {detail}"


SCHEME_FOR = {
    "psi-plus": ("aligned", StateSpec.bell_psi(+1)),
    "psi-minus": ("opposite", StateSpec.bell_psi(-1)),
    "phi-plus": ("opposite", StateSpec.bell_phi(+1)),
    "phi-minus": ("aligned", StateSpec.bell_phi(-1)),
}


def test_01_balanced_superposition_maxima(capsys):
    det = DetectorParams(1.0)
    checks = []
    for name, (scheme, state) in SCHEME_FOR.items():
        result = maximize_bell(state, det, _config(scheme))
        target = 2.69 if "psi" in name else 2.68
        checks.append(
            (name, result.abs_bell, result.params["j"],
             abs(result.abs_bell - target) <= 0.01
             and abs(result.params["j"] - 0.17) <= 0.01)
        )
    ok = all(c[-1] for c in checks)
    with capsys.disabled():
        _report(
            "1 balanced superposition maxima",
            ok,
            "; ".join(f"{n}: |B|={b:.4f} at j={j:.4f}" for n, b, j, _ in checks),
        )


def test_02_balanced_superposition_thresholds(capsys):
    checks = []
    for name, target in (("psi-minus", 0.836), ("phi-plus", 0.816)):
        scheme, state = SCHEME_FOR[name]
        eta_star = threshold_eta(state, _config(scheme))
        checks.append((name, eta_star, abs(eta_star - target) <= 0.005))
    ok = all(c[-1] for c in checks)
    with capsys.disabled():
        _report(
            "2 efficiency thresholds",
            ok,
            "; ".join(f"{n}: eta*={e:.4f}" for n, e, _ in checks),
        )


def test_03_two_photon_maximum_and_threshold(capsys):
    state = StateSpec.two_photon()
    cfg = SearchConfig(scheme=QuadScheme("two-photon"),
                       j_grid=GridAxis(0.1, 0.8, 50))
    result = maximize_bell(state, DetectorParams(1.0), cfg)
    eta_star = threshold_eta(state, cfg)
    ok = (
        abs(result.abs_bell - 2.07) <= 0.01
        and abs(result.params["j"] - 0.45) <= 0.01
        and abs(eta_star - 0.92) <= 0.005
    )
    with capsys.disabled():
        _report(
            "3 two-photon superposition",
            ok,
            f"-B={result.abs_bell:.4f} at j={result.params['j']:.4f}, "
            f"eta*={eta_star:.4f}",
        )


def test_04_twin_beam(capsys):
    cfg = _config("opposite", r_grid=GridAxis(0.3, 1.2, 20))
    result = maximize_bell(StateSpec.twb(0.5), DetectorParams(1.0), cfg)
    eta_star = threshold_eta(StateSpec.twb(0.74), _config("opposite"))
    # at eta = 0.8 the twin beam still has a violation window in j while
    # the balanced superpositions have none
    det08 = DetectorParams(0.8)
    twb_max = maximize_bell(StateSpec.twb(0.74), det08, _config("opposite"))
    bell_max = max(
        maximize_bell(state, det08, _config(scheme)).abs_bell
        for scheme, state in SCHEME_FOR.values()
    )
    ok = (
        abs(result.abs_bell - 2.45) <= 0.01
        and abs(result.params["j"] - 0.16) <= 0.01
        and abs(result.params["r"] - 0.74) <= 0.01
        and abs(eta_star - 0.77) <= 0.005
        and twb_max.abs_bell > 2.0
        and bell_max <= 2.0
    )
    with capsys.disabled():
        _report(
            "4 twin beam",
            ok,
            f"B={result.abs_bell:.4f} at (j, r)=({result.params['j']:.4f}, "
            f"{result.params['r']:.4f}), eta*={eta_star:.4f}, "
            f"eta=0.8 window: twb |B|={twb_max.abs_bell:.4f}, "
            f"superpositions |B|={bell_max:.4f}",
        )


def test_05a_photon_subtracted_maximum(capsys):
    cfg = _config("opposite", r_grid=GridAxis(0.2, 0.8, 20))
    result = maximize_bell(
        IpsParams(0.5, 0.9999, 1.0), DetectorParams(1.0), cfg
    )
    ok = (
        abs(result.abs_bell - 2.53) <= 0.01
        and abs(result.params["j"] - 0.16) <= 0.01
        and abs(result.params["r"] - 0.39) <= 0.01
    )
    with capsys.disabled():
        _report(
            "5a photon-subtracted maximum",
            ok,
            f"B={result.abs_bell:.4f} at (j, r)=({result.params['j']:.4f}, "
            f"{result.params['r']:.4f})",
        )


def test_05b_photon_subtracted_low_transmissivity(capsys):
    # Asserted as stated: no violation at T = 0.8 anywhere in r <= 1.5.
    # The physically assembled correlation (which matches the brute-force
    # conditional state) does violate here, so an honest failure of this
    # test is the expected outcome; see the repository notes.
    best = 0.0
    cfg = _config("opposite")
    for r in np.linspace(0.05, 1.5, 30):
        result = maximize_bell(
            IpsParams(float(r), 0.8, 1.0), DetectorParams(1.0), cfg
        )
        best = max(best, result.abs_bell)
    ok = best <= 2.0
    with capsys.disabled():
        _report(
            "5b photon-subtracted low transmissivity",
            ok,
            f"max |B| over r in [0.05, 1.5] at T=0.8 is {best:.4f} "
            "(expected <= 2 by the stated claim; the brute-force oracle "
            "confirms the violation is real)",
        )


def test_06_unbalanced_superposition(capsys):
    # below the violation threshold the optimum crosses to phi > pi/4,
    # so the mixing-angle axis must span the full (0, pi/2) range
    phi_grid = GridAxis(0.05, pi / 2.0 - 0.05, 30)
    cfg = _config("opposite", phi_grid=phi_grid)
    result = maximize_bell(
        StateSpec.unbal_phi(0.7), DetectorParams(1.0), cfg
    )
    eta_star = threshold_eta(StateSpec.unbal_phi(0.7), cfg)
    ok = result.params["phi"] < pi / 4.0 - 1e-3 and abs(eta_star - 0.74) <= 0.01
    with capsys.disabled():
        _report(
            "6 unbalanced superposition",
            ok,
            f"phi*={result.params['phi']:.4f} (pi/4={pi / 4.0:.4f}), "
            f"eta*={eta_star:.4f}",
        )


def test_07_oracle_equivalence(capsys):
    rng = np.random.default_rng(2026)
    worst_analytic = 0.0
    analytic = [
        StateSpec.bell_psi(+1), StateSpec.bell_phi(-1),
        StateSpec.unbal_psi(0.6), StateSpec.two_photon(),
        StateSpec.twb(0.74),
    ]
    trunc = FockTruncation(n_max=60)
    for eta in (0.6, 0.85, 1.0):
        det = DetectorParams(eta)
        for _ in range(20):
            state = analytic[rng.integers(len(analytic))]
            alpha, beta = (
                complex(*rng.uniform(-0.8, 0.8, 2)),
                complex(*rng.uniform(-0.8, 0.8, 2)),
            )
            closed = corr_primitives(state, eta, alpha, beta)
            brute = oracle_primitives(state, det, alpha, beta, trunc)
            worst_analytic = max(
                worst_analytic, max(abs(c - b) for c, b in zip(closed, brute))
            )

    worst_ips = 0.0
    ips = IpsParams(0.39, 0.9999, 1.0)
    det = DetectorParams(0.9)
    from onoff_bell.ips import ips_corr_primitives

    for _ in range(10):
        alpha, beta = (
            complex(*rng.uniform(-0.5, 0.5, 2)),
            complex(*rng.uniform(-0.5, 0.5, 2)),
        )
        _, ci, cg, cy, _ = ips_corr_primitives(ips, 0.9, alpha, beta)
        brute = oracle_primitives(ips, det, alpha, beta)
        worst_ips = max(
            worst_ips, max(abs(c - b) for c, b in zip((ci, cg, cy), brute))
        )

    worst_dark = 0.0
    det_dark = DetectorParams(0.85, 0.08)
    quad = QuadScheme("opposite").quad_at(0.17)
    for state in (StateSpec.bell_phi(+1), StateSpec.two_photon()):
        diff = abs(
            bell_parameter(state, det_dark, quad)
            - oracle_bell(state, det_dark, quad)
        )
        worst_dark = max(worst_dark, diff)

    ok = worst_analytic <= 1e-9 and worst_ips <= 1e-5 and worst_dark <= 1e-12
    with capsys.disabled():
        _report(
            "7 oracle equivalence",
            ok,
            f"analytic worst {worst_analytic:.2e} (tol 1e-9), "
            f"ips worst {worst_ips:.2e} (tol 1e-5), "
            f"dark scaling worst {worst_dark:.2e} (tol 1e-12)",
        )


def test_08_bound_suite_and_dark_expansion(capsys):
    scheme = QuadScheme("opposite")
    ordered = True
    saturated = True
    for eta in (0.6, 0.85, 1.0):
        det = DetectorParams(eta)
        for state in (StateSpec.bell_psi(-1), StateSpec.twb(0.74)):
            for j in np.linspace(0.02, 0.6, 25):
                quad = scheme.quad_at(float(j))
                bell = bell_parameter(state, det, quad)
                bound = bell_max_bound(state, det, quad)
                ordered &= bell <= bound + 1e-12 and bound <= CIRELSON + 1e-12
                if eta == 1.0:
                    saturated &= abs(bound - CIRELSON) <= 1e-12

    quad = scheme.quad_at(0.17)
    state = StateSpec.bell_phi(+1)
    darks = np.array([0.04, 0.02, 0.01, 0.005])
    errors = [
        abs(
            bell_small_d(state, 0.9, d, quad)
            - bell_parameter(state, DetectorParams(0.9, d), quad)
        )
        for d in darks
    ]
    slope = float(np.polyfit(np.log(darks), np.log(errors), 1)[0])
    ok = ordered and saturated and abs(slope - 2.0) <= 0.1
    with capsys.disabled():
        _report(
            "8 bound suite and small-dark expansion",
            ok,
            f"ordering {'holds' if ordered else 'broken'}, unit-efficiency "
            f"saturation {'holds' if saturated else 'broken'}, "
            f"error slope {slope:.3f}",
        )


def test_09_povm_suite(capsys):
    complete = True
    monotone = True
    projective_identity = 0.0
    for eta, dark in ((0.55, 0.0), (0.85, 0.2), (0.95, 0.1)):
        for background in (None, POISSONIAN):
            if background is None:
                det = DetectorParams(eta, dark)
            else:
                det = DetectorParams(eta, dark, background)
            w = povm_fock_weights(det, 40).no_click_weights
            complete &= bool(np.all(w >= -1e-15) and np.all(w <= 1.0 + 1e-15))
            monotone &= bool(np.all(np.diff(w) <= 1e-15))
    # squared no-click operator identity, term by term in the Fock basis
    for eta in (0.3, 0.7, 0.95):
        w = povm_fock_weights(DetectorParams(eta), 40).no_click_weights
        w2 = povm_fock_weights(
            DetectorParams(eta * (2.0 - eta)), 40
        ).no_click_weights
        projective_identity = max(
            projective_identity, float(np.max(np.abs(w**2 - w2)))
        )
    first_order = 0.0
    for dark in (1e-3, 5e-4):
        thermal = povm_fock_weights(DetectorParams(0.8, dark), 30)
        poisson = povm_fock_weights(DetectorParams(0.8, dark, POISSONIAN), 30)
        first_order = max(
            first_order,
            float(np.max(np.abs(
                thermal.no_click_weights - poisson.no_click_weights
            ))),
        )
    ok = (
        complete
        and monotone
        and projective_identity <= 1e-14
        and first_order <= 10.0 * 1e-3**2
    )
    with capsys.disabled():
        _report(
            "9 measurement-model suite",
            ok,
            f"completeness {'holds' if complete else 'broken'}, monotone "
            f"{'holds' if monotone else 'broken'}, squared-operator identity "
            f"{projective_identity:.2e} (tol 1e-14), thermal/poissonian "
            f"first-order gap {first_order:.2e}",
        )
