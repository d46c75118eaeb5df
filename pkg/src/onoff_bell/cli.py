"""Command-line front end.

Subcommands:

    scan          Bell parameter over a displacement-amplitude grid
    optimize      grid + simplex maximization of |B|
    threshold     efficiency below which the violation disappears
    oracle-check  closed forms vs. the truncated-Fock brute force
    bound         B and its POVM-aware upper bound over a grid

Output is CSV (header row, 9-significant-digit floats, comma, LF) or
JSON; identical configurations produce byte-identical files.  Exit
codes: 0 success, 1 check failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from dataclasses import dataclass
from math import sqrt

import numpy as np

from .bell import (
    CIRELSON,
    KAPPA_DEFAULT,
    DisplacementQuad,
    QuadScheme,
    SCHEME_NAMES,
    bell_max_bound,
    bell_parameter,
    correlation_primitives,
)
from .detector import THERMAL, POISSONIAN, DetectorParams
from .ips import IpsParams
from .oracle import oracle_primitives
from .search import GridAxis, SearchConfig, maximize_bell, threshold_eta
from .states import STATE_NAMES, StateSpec

# States whose violation the source analysis reports as -B.
NEGATIVE_SIGN_STATES = ("bell-psi-plus", "bell-psi-minus", "two-photon")

ORACLE_TOL_ANALYTIC = 1e-9
ORACLE_TOL_IPS = 1e-5

_UNSET = object()


@dataclass(frozen=True)
class RunConfig:
    command: str
    state: str
    eta: float = 1.0
    dark: float = 0.0
    background: str = THERMAL
    scheme: str | None = None
    kappa: float = KAPPA_DEFAULT
    grid: str = "0.01:0.5:50"
    r_grid: str | None = None
    phi_grid: str | None = None
    kappa_grid: str | None = None
    quad: str | None = None
    r: float | None = None
    phi: float | None = None
    transmissivity: float | None = None
    ips_eff: float = 1.0
    protocol: str = "reoptimize"
    points: int = 20
    seed: int = 0
    report_abs: bool = False
    out: str | None = None
    format: str = "csv"

    def to_json(self) -> str:
        return json.dumps(dataclasses.asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "RunConfig":
        return cls(**json.loads(text))


class UsageError(ValueError):
    pass


def _parse_grid(spec: str) -> GridAxis:
    parts = spec.split(":")
    if len(parts) != 3:
        raise UsageError(f"grid must be lo:hi:steps, got {spec!r}")
    try:
        lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise UsageError(f"bad grid {spec!r}: {exc}") from None
    return GridAxis(lo, hi, steps)


def _parse_quad(spec: str) -> DisplacementQuad:
    parts = spec.split(",")
    if len(parts) != 8:
        raise UsageError(
            "quad needs 8 comma-separated reals: "
            "aRe,aIm,bRe,bIm,apRe,apIm,bpRe,bpIm"
        )
    vals = [float(p) for p in parts]
    return DisplacementQuad(
        complex(vals[0], vals[1]),
        complex(vals[2], vals[3]),
        complex(vals[4], vals[5]),
        complex(vals[6], vals[7]),
    )


def _default_scheme(state_name: str) -> str:
    if state_name == "two-photon":
        return "two-photon"
    if state_name in ("bell-psi-plus", "bell-phi-minus"):
        return "aligned"
    return "opposite"


def _build_state(cfg: RunConfig):
    if cfg.state == "ips":
        if cfg.r is None or cfg.transmissivity is None:
            raise UsageError("ips needs --r and --transmissivity")
        return IpsParams(cfg.r, cfg.transmissivity, cfg.ips_eff)
    if cfg.state not in STATE_NAMES:
        raise UsageError(f"unknown state {cfg.state!r}")
    return StateSpec.from_name(cfg.state, phi=cfg.phi, r=cfg.r)


def _build_scheme(cfg: RunConfig) -> QuadScheme:
    name = cfg.scheme or _default_scheme(cfg.state)
    if name not in SCHEME_NAMES:
        raise UsageError(f"unknown scheme {name!r}")
    if name == "full":
        if cfg.quad is None:
            raise UsageError("the full scheme needs --quad")
        return QuadScheme("full", kappa=cfg.kappa, quad=_parse_quad(cfg.quad))
    return QuadScheme(name, kappa=cfg.kappa)


def _build_detector(cfg: RunConfig) -> DetectorParams:
    return DetectorParams(cfg.eta, cfg.dark, cfg.background)


def _search_config(cfg: RunConfig) -> SearchConfig:
    return SearchConfig(
        scheme=_build_scheme(cfg),
        j_grid=_parse_grid(cfg.grid),
        kappa_grid=_parse_grid(cfg.kappa_grid) if cfg.kappa_grid else None,
        r_grid=_parse_grid(cfg.r_grid) if cfg.r_grid else None,
        phi_grid=_parse_grid(cfg.phi_grid) if cfg.phi_grid else None,
    )


def _report_value(cfg: RunConfig, bell: float) -> float:
    if cfg.report_abs:
        return abs(bell)
    if cfg.state in NEGATIVE_SIGN_STATES:
        return -bell
    return bell


def _fmt(x) -> str:
    if isinstance(x, float):
        return format(x, ".9g")
    return str(x)


def _emit(cfg: RunConfig, columns, rows) -> None:
    if cfg.format == "csv":
        lines = [",".join(columns)]
        lines.extend(",".join(_fmt(v) for v in row) for row in rows)
        text = "\n".join(lines) + "\n"
    else:
        payload = [
            {col: (float(_fmt(v)) if isinstance(v, float) else v)
             for col, v in zip(columns, row)}
            for row in rows
        ]
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def cmd_scan(cfg: RunConfig) -> int:
    state = _build_state(cfg)
    det = _build_detector(cfg)
    scheme = _build_scheme(cfg)
    grid = _parse_grid(cfg.grid)
    rows = []
    for j in grid.values():
        bell = bell_parameter(state, det, scheme.quad_at(float(j)))
        rows.append((float(j), _report_value(cfg, bell)))
    _emit(cfg, ("j", "bell"), rows)
    return 0


def cmd_optimize(cfg: RunConfig) -> int:
    state = _build_state(cfg)
    det = _build_detector(cfg)
    result = maximize_bell(state, det, _search_config(cfg))
    columns = ["bell", "abs_bell", "violated"]
    row = [_report_value(cfg, result.bell_value), result.abs_bell,
           int(result.violated)]
    for name in sorted(result.params):
        columns.append(name)
        row.append(result.params[name])
    _emit(cfg, tuple(columns), [tuple(row)])
    return 0


def cmd_threshold(cfg: RunConfig) -> int:
    state = _build_state(cfg)
    eta_star = threshold_eta(state, _search_config(cfg), protocol=cfg.protocol)
    _emit(cfg, ("eta_star",), [(float("nan") if eta_star is None else eta_star,)])
    return 0


def cmd_oracle_check(cfg: RunConfig) -> int:
    state = _build_state(cfg)
    det = _build_detector(cfg)
    is_ips = isinstance(state, IpsParams)
    tol = ORACLE_TOL_IPS if is_ips else ORACLE_TOL_ANALYTIC
    rng = np.random.default_rng(cfg.seed)
    radius = 0.6 if is_ips else 1.0
    rows = []
    worst = 0.0
    for _ in range(cfg.points):
        alpha, beta = (
            complex(*rng.uniform(-radius, radius, 2)),
            complex(*rng.uniform(-radius, radius, 2)),
        )
        closed = correlation_primitives(state, det, alpha, beta)
        brute = oracle_primitives(state, det, alpha, beta)
        diff = max(abs(c - b) for c, b in zip(closed, brute))
        worst = max(worst, diff)
        rows.append(
            (alpha.real, alpha.imag, beta.real, beta.imag,
             closed[0], brute[0], closed[1], brute[1], closed[2], brute[2],
             diff)
        )
    _emit(
        cfg,
        ("alpha_re", "alpha_im", "beta_re", "beta_im",
         "i_closed", "i_oracle", "g_closed", "g_oracle",
         "y_closed", "y_oracle", "abs_diff"),
        rows,
    )
    if worst > tol:
        print(f"oracle check failed: worst |diff| = {worst:.3e} > {tol:.1e}",
              file=sys.stderr)
        return 1
    return 0


def cmd_bound(cfg: RunConfig) -> int:
    if cfg.dark != 0.0:
        raise UsageError("the bound is defined for --dark 0 only")
    state = _build_state(cfg)
    det = _build_detector(cfg)
    scheme = _build_scheme(cfg)
    grid = _parse_grid(cfg.grid)
    rows = []
    for j in grid.values():
        quad = scheme.quad_at(float(j))
        bell = bell_parameter(state, det, quad)
        bound = bell_max_bound(state, det, quad)
        rows.append((float(j), _report_value(cfg, bell), bound, CIRELSON))
    _emit(cfg, ("j", "bell", "bell_max", "cirelson"), rows)
    return 0


_COMMANDS = {
    "scan": cmd_scan,
    "optimize": cmd_optimize,
    "threshold": cmd_threshold,
    "oracle-check": cmd_oracle_check,
    "bound": cmd_bound,
}


def _add_common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", default=None, help="JSON run file")
    parser.add_argument("--state", default=None,
                        choices=list(STATE_NAMES) + ["ips"])
    parser.add_argument("--eta", type=float, default=None)
    parser.add_argument("--dark", type=float, default=None)
    parser.add_argument("--background", choices=(THERMAL, POISSONIAN),
                        default=None)
    parser.add_argument("--scheme", choices=SCHEME_NAMES, default=None)
    parser.add_argument("--kappa", type=float, default=None)
    parser.add_argument("--grid", default=None, help="lo:hi:steps")
    parser.add_argument("--r-grid", dest="r_grid", default=None)
    parser.add_argument("--phi-grid", dest="phi_grid", default=None)
    parser.add_argument("--kappa-grid", dest="kappa_grid", default=None)
    parser.add_argument("--quad", default=None,
                        help="aRe,aIm,bRe,bIm,apRe,apIm,bpRe,bpIm")
    parser.add_argument("--r", type=float, default=None)
    parser.add_argument("--phi", type=float, default=None)
    parser.add_argument("--transmissivity", type=float, default=None)
    parser.add_argument("--ips-eff", dest="ips_eff", type=float, default=None)
    parser.add_argument("--protocol", choices=("reoptimize", "fixed"),
                        default=None)
    parser.add_argument("--points", type=int, default=None)
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--report-abs", dest="report_abs",
                        action="store_const", const=True, default=None)
    parser.add_argument("--out", default=None)
    parser.add_argument("--format", choices=("csv", "json"), default=None)


def _merge_config(command: str, args: argparse.Namespace) -> RunConfig:
    flag_values = {
        name: getattr(args, name)
        for name in RunConfig.__dataclass_fields__
        if name != "command" and getattr(args, name, None) is not None
    }
    file_values = {}
    if args.config is not None:
        with open(args.config, encoding="utf-8") as handle:
            file_values = json.load(handle)
        file_command = file_values.pop("command", command)
        if file_command != command:
            raise UsageError(
                f"config file is for {file_command!r}, not {command!r}"
            )
        conflicts = sorted(set(file_values) & set(flag_values))
        if conflicts:
            raise UsageError(
                "options set both on the command line and in the config "
                f"file: {', '.join(conflicts)}"
            )
    merged = {**file_values, **flag_values}
    if "state" not in merged:
        raise UsageError("--state is required")
    return RunConfig(command=command, **merged)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="onoff-bell",
        description="Bell-inequality tests with displaced on/off photodetection",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        _add_common_flags(sub.add_parser(name))
    args = parser.parse_args(argv)
    try:
        cfg = _merge_config(args.command, args)
        return _COMMANDS[cfg.command](cfg)
    except (UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
