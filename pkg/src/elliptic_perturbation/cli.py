"""Command-line front end.

    elliptic-perturbation --config run.json [--output DIR] [--quiet]

The config is one JSON document.  Complex numbers are ``[re, im]`` pairs
(plain numbers are read as real).  Keys:

``command``      one of solve, validate-ops, opnorm, compare-fd
``tau, sigma``   canonical parameters
``boundary``     exactly one of
                 ``{"explicit": {"k": h_k, ...}}``,
                 ``{"holder": {"alpha": a, "modes": m, "seed": s}}``,
                 ``{"trace_of_exact": {"family": "LAME"|"SKEW", "poly_coeffs": [...]}}``
``map``          Taylor coefficients ``[a0, a1, ...]`` (default identity)
``grid``         ``{"K": 32, "J": 48}``
``solver``       ``{"max_terms": 60, "tail_tol": 1e-10, "p_exponent": 2.2}``
``fd``           ``{"n": 128, "boundary_order": 1}`` for compare-fd
``opnorm``       ``{"kernels": [...], "p": [...], "trials": 4, "seed": 0}``
``validate``     ``{"points": 10, "seed": 0, "epsilon": 1e-3}``
``output_dir``   where files go (``--output`` wins)

Exit status: 0 success, 1 validation failure, 2 configuration or I/O error,
3 the series diverged.
"""
from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from pathlib import Path

import numpy as np

from .canon import StrongEllipticityError, canonical_params
from .conformal import ConformalMapSeries, InvalidMapError, pushforward
from .field import make_grid, synthesize
from .operators import BoundaryFunction, KernelId
from .oracles.exact import ExactSolutionSpec, Family, exact_solution
from .oracles.fd import SingularSystemError, fd_solve
from .oracles.holder import holder_boundary
from .oracles.identities import run_identity_suite, suite_as_dicts
from .oracles.opnorm import opnorm_estimate
from .solver import SolverConfig, solve_series

logger = logging.getLogger("elliptic_perturbation.cli")

COMMANDS = ("solve", "validate-ops", "opnorm", "compare-fd")
EXIT_OK, EXIT_VALIDATION, EXIT_CONFIG, EXIT_DIVERGING = 0, 1, 2, 3


class ConfigError(ValueError):
    pass


def _complex(v) -> complex:
    if isinstance(v, (list, tuple)):
        if len(v) != 2:
            raise ConfigError(f"complex numbers are [re, im] pairs, got {v!r}")
        return complex(float(v[0]), float(v[1]))
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        return complex(v)
    raise ConfigError(f"cannot read {v!r} as a number")


def _boundary(cfg: dict, params, grid):
    spec = cfg.get("boundary")
    if not isinstance(spec, dict) or len(spec) != 1:
        raise ConfigError("boundary must name exactly one source: explicit, holder or trace_of_exact")
    (kind, body), = spec.items()
    kind = kind.replace("-", "_")
    if kind == "explicit":
        if not isinstance(body, dict) or not body:
            raise ConfigError("explicit boundary needs a non-empty {mode: coefficient} object")
        return BoundaryFunction.from_dict({int(k): _complex(v) for k, v in body.items()}), None
    if kind == "holder":
        try:
            return holder_boundary(float(body["alpha"]), int(body["modes"]), int(body.get("seed", 0))), None
        except KeyError as exc:
            raise ConfigError(f"holder boundary is missing {exc}") from None
    if kind == "trace_of_exact":
        es = ExactSolutionSpec(body["family"], [_complex(c) for c in body["poly_coeffs"]], params)
        field, trace = exact_solution(es, grid)
        return trace, es
    raise ConfigError(f"unknown boundary source {kind!r}")


def load_config(path, output_override=None) -> dict:
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object")
    if output_override is not None:
        cfg["output_dir"] = str(output_override)
    if cfg.get("command") not in COMMANDS:
        raise ConfigError(f"command must be one of {', '.join(COMMANDS)}, got {cfg.get('command')!r}")
    if "output_dir" not in cfg:
        raise ConfigError("no output directory: set output_dir or pass --output")
    return cfg


def _setup(cfg: dict):
    """Everything that can fail as a configuration error, done before any work."""
    params = canonical_params(float(cfg.get("tau", 0.0)), float(cfg.get("sigma", 0.0)))
    g = cfg.get("grid", {})
    s = cfg.get("solver", {})
    solver_cfg = SolverConfig(max_terms=int(s.get("max_terms", 60)), tail_tol=float(s.get("tail_tol", 1e-10)),
                              p_exponent=float(s.get("p_exponent", 2.2)), max_mode=int(g.get("K", 32)),
                              radial_count=int(g.get("J", 48)))
    grid = solver_cfg.grid
    omega = None
    if cfg.get("map") is not None:
        omega = ConformalMapSeries(np.array([_complex(c) for c in cfg["map"]]))
        omega.check()
    return params, solver_cfg, grid, omega


def _write_json(path: Path, payload: dict) -> None:
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def write_solution_csv(path, solution) -> None:
    grid = solution.field.grid
    R, T = grid.polar_mesh()
    omega = solution.omega or ConformalMapSeries.identity()
    W = pushforward(omega, R, T)
    V = synthesize(solution.field, R, T)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["r", "theta", "x", "y", "re", "im"])
        for r, t, w, v in zip(R.ravel(), T.ravel(), W.ravel(), V.ravel()):
            writer.writerow([repr(float(r)), repr(float(t)), repr(float(w.real)), repr(float(w.imag)),
                             repr(float(v.real)), repr(float(v.imag))])


def _status_for(stop_reason: str) -> tuple:
    if stop_reason == "diverging":
        return "diverging", EXIT_DIVERGING
    return "ok", EXIT_OK


def cmd_solve(cfg, out: Path, params, solver_cfg, grid, omega) -> int:
    H, _ = _boundary(cfg, params, grid)
    sol = solve_series(params, H, omega, solver_cfg)
    status, code = _status_for(sol.report.stop_reason)
    write_solution_csv(out / "solution.csv", sol)
    sol.report.write_csv(out / "report.csv")
    sol.report.write_json(out / "summary.json", command="solve", status=status)
    logger.info("solve: %s after %d terms", sol.report.stop_reason, sol.report.terms_used)
    return code


def cmd_validate(cfg, out: Path, params, solver_cfg, grid, omega) -> int:
    v = cfg.get("validate", {})
    checks = run_identity_suite(grid, n_points=int(v.get("points", 10)), seed=int(v.get("seed", 0)),
                                epsilon=float(v.get("epsilon", 1e-3)))
    ok = all(c.passed for c in checks)
    status = "ok" if ok else "failed"
    _write_json(out / "validate.json", {"status": status, "checks": suite_as_dicts(checks)})
    _write_json(out / "summary.json", {"command": "validate-ops", "status": status,
                                       "passed": sum(c.passed for c in checks), "total": len(checks)})
    for c in checks:
        logger.info("%-36s %s", c.name, "pass" if c.passed else "FAIL")
    return EXIT_OK if ok else EXIT_VALIDATION


def cmd_opnorm(cfg, out: Path, params, solver_cfg, grid, omega) -> int:
    o = cfg.get("opnorm", {})
    kernels = [KernelId[k] for k in o.get("kernels", ["KDBAR", "BEURLING_KD"])]
    ps = [float(p) for p in o.get("p", [2.0, 2.5, 3.0])]
    trials, seed = int(o.get("trials", 4)), int(o.get("seed", 0))
    estimates = [opnorm_estimate(k, p, grid, trials=trials, seed=seed).as_dict() for k in kernels for p in ps]
    _write_json(out / "estimates.json", {"grid": {"K": grid.max_mode, "J": grid.radial_count},
                                         "estimates": estimates})
    _write_json(out / "summary.json", {"command": "opnorm", "status": "ok", "count": len(estimates)})
    return EXIT_OK


def cmd_compare_fd(cfg, out: Path, params, solver_cfg, grid, omega) -> int:
    H, _ = _boundary(cfg, params, grid)
    f = cfg.get("fd", {})
    n = int(f.get("n", 128))
    sol = solve_series(params, H, omega, solver_cfg)
    status, code = _status_for(sol.report.stop_reason)
    payload = {"n": n, "stop_reason": sol.report.stop_reason, "terms_used": sol.report.terms_used}
    if code == EXIT_OK:
        cf = fd_solve(params, omega, H, n, boundary_order=int(f.get("boundary_order", 1)))
        z = cf.z[cf.inside]
        diff = np.abs(cf.values[cf.inside] - sol.field(z))
        payload.update(max_discrepancy=float(diff.max()), mean_discrepancy=float(diff.mean()),
                       nodes=int(diff.size))
    _write_json(out / "compare.json", dict(payload, status=status))
    sol.report.write_json(out / "summary.json", command="compare-fd", status=status)
    return code


HANDLERS = {"solve": cmd_solve, "validate-ops": cmd_validate, "opnorm": cmd_opnorm,
            "compare-fd": cmd_compare_fd}


def run(cfg: dict) -> int:
    """Execute one validated config; returns the exit status."""
    try:
        params, solver_cfg, grid, omega = _setup(cfg)
        if cfg["command"] in ("solve", "compare-fd"):
            _boundary(cfg, params, grid)
        out = Path(cfg["output_dir"])
        out.mkdir(parents=True, exist_ok=True)
    except (StrongEllipticityError, InvalidMapError, ConfigError, ValueError, KeyError, TypeError, OSError) as exc:
        logger.error("configuration error: %s", exc)
        return EXIT_CONFIG
    try:
        return HANDLERS[cfg["command"]](cfg, out, params, solver_cfg, grid, omega)
    except OSError as exc:
        logger.error("I/O error: %s", exc)
        return EXIT_CONFIG
    except SingularSystemError as exc:
        logger.error("%s", exc)
        _write_json(out / "summary.json", {"command": cfg["command"], "status": "failed", "error": str(exc)})
        return EXIT_VALIDATION


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="elliptic-perturbation",
                                 description="Perturbation-series solver for elliptic systems on the disk.")
    ap.add_argument("--config", required=True, help="JSON run configuration")
    ap.add_argument("--output", help="output directory (overrides output_dir)")
    ap.add_argument("--quiet", action="store_true", help="only report errors")
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.ERROR if args.quiet else logging.INFO, format="%(levelname)s %(message)s",
                        stream=sys.stderr)
    try:
        cfg = load_config(args.config, args.output)
    except ConfigError as exc:
        logger.error("configuration error: %s", exc)
        return EXIT_CONFIG
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
