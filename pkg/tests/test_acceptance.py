"""Acceptance criteria, one test each.

Every test prints a single ``PASS``/``FAIL`` line with the measured numbers
(visible under ``pytest -v`` and when run as a script) and then asserts the
pinned tolerances.
"""
import json
import time

import numpy as np
import pytest

from elliptic_perturbation import (BoundaryFunction, ConformalMapSeries, KernelId, SolverConfig,
                                   canonical_params, make_grid, residual_M, solve_series)
from elliptic_perturbation.cli import main as cli_main
from elliptic_perturbation.oracles import (ExactSolutionSpec, Family, apply_L, equality_family, exact_solution,
                                           fd_solve, norm_ratio, opnorm_estimate, run_identity_suite)
from elliptic_perturbation.solver import _frame_factor, boundary_error

# pinned tolerances
HARMONIC_ERR = 1e-10
HARMONIC_SECONDS = 1.0
TERMINATING_ERR = 1e-8
VANISH_REL = 1e-13
RESIDUAL_TOL = 1e-8
CLOSED_FORM_TOL = 1e-8
ORACLE_TOL = 1e-6
IDENTITY_SECONDS = 30.0
KDBAR_L2_RANGE = (0.95, 1.001)
EQUALITY_TOL = 1e-8
LOWER_BOUND_SLACK = 0.02
WEIGHTED_RATIO_MAX = 0.9
SLOPE_REL_TOL = 0.15
FD_DISCREPANCY = 2e-2
NONTERMINATING_SECONDS = 120.0
BOUNDARY_TOL = 1e-8

SMOOTH_H = {1: 0.5, -1: 0.5, 2: -0.25j, -2: 0.25j, 3: 0.125, -3: 0.125, 4: 0.05j, -4: -0.05j, 0: 0.3}

_boundary_errors = {}


@pytest.fixture
def say(capsys):
    def _say(label, ok, detail):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {label}: {detail}")
    return _say


def _grid_error(field, f):
    R, T = field.grid.polar_mesh()
    return float(np.abs(field.nodal_values() - f(R * np.exp(1j * T))).max())


def _all_boundary_errors(sol, H):
    return max(boundary_error(S, H) for S in sol.partial_sums)


def test_criterion_1_harmonic(say):
    H = BoundaryFunction.from_dict({2: 1, -2: 1})
    cfg = SolverConfig(max_mode=16, radial_count=24)
    t0 = time.perf_counter()
    sol = solve_series(canonical_params(0, 0), H, None, cfg)
    elapsed = time.perf_counter() - t0
    err = _grid_error(sol.field, lambda z: z**2 + np.conj(z) ** 2)
    _boundary_errors[1] = _all_boundary_errors(sol, H)
    ok = err <= HARMONIC_ERR and elapsed < HARMONIC_SECONDS
    say(1, ok, f"max grid error {err:.2e} (<= {HARMONIC_ERR:g}), runtime {elapsed:.3f}s (< {HARMONIC_SECONDS:g}s), "
               f"stop {sol.report.stop_reason}")
    assert err <= HARMONIC_ERR
    assert elapsed < HARMONIC_SECONDS


def test_criterion_2_lame(say):
    p = canonical_params(0, 0.5)
    spec = ExactSolutionSpec(Family.LAME, [0, 0, 1], p)
    f_star = spec.polynomial()
    symbolic_zero = apply_L(p, f_star).is_zero()
    grid = make_grid(16, 24)
    exact_field, H = exact_solution(spec, grid)
    sol = solve_series(p, H, None, SolverConfig(max_mode=16, radial_count=24))
    norms = [r.norm_F for r in sol.report.records]
    vanish = all(n < VANISH_REL * norms[0] for n in norms[2:]) and len(norms) > 2
    err = _grid_error(sol.field, f_star)
    res = residual_M(p, None, sol.field)
    _boundary_errors[2] = _all_boundary_errors(sol, H)
    ok = symbolic_zero and vanish and err <= TERMINATING_ERR and res <= RESIDUAL_TOL
    say(2, ok, f"symbolic L f* = 0: {symbolic_zero}; max ||F_n||/||F_0|| for n>=2 "
               f"{max(norms[2:]) / norms[0]:.1e}; max error {err:.2e}; residual {res:.2e}")
    assert symbolic_zero
    assert vanish
    assert err <= TERMINATING_ERR
    assert res <= RESIDUAL_TOL


def test_criterion_3_skew(say):
    p = canonical_params(0.5, 0)
    spec = ExactSolutionSpec(Family.SKEW, [0, 0, 1], p)
    grid = make_grid(16, 24)
    _, H = exact_solution(spec, grid)
    sol = solve_series(p, H, None, SolverConfig(max_mode=16, radial_count=24))
    norms = np.array([r.norm_F for r in sol.report.records])
    nonzero = int(np.sum(norms >= VANISH_REL * norms[0]))
    err = _grid_error(sol.field, lambda z: (np.conj(z) - 2 * z) ** 2)
    _boundary_errors[3] = _all_boundary_errors(sol, H)
    ok = nonzero == 2 and err <= TERMINATING_ERR
    say(3, ok, f"nonzero terms {nonzero} (== 2), max error {err:.2e} (<= {TERMINATING_ERR:g})")
    assert nonzero == 2
    assert err <= TERMINATING_ERR


def test_criterion_4_identities(say):
    t0 = time.perf_counter()
    checks = run_identity_suite(make_grid(32, 48), n_points=10, seed=4,
                                closed_tol=CLOSED_FORM_TOL, oracle_tol=ORACLE_TOL)
    elapsed = time.perf_counter() - t0
    worst_closed = max(c.closed_form_error for c in checks)
    worst_oracle = max(c.oracle_error for c in checks)
    ok = all(c.passed for c in checks) and elapsed < IDENTITY_SECONDS
    say(4, ok, f"{sum(c.passed for c in checks)}/{len(checks)} identities; worst closed-form error "
               f"{worst_closed:.1e}, worst oracle gap {worst_oracle:.1e}; runtime {elapsed:.1f}s")
    assert all(c.passed for c in checks), [c.name for c in checks if not c.passed]
    assert elapsed < IDENTITY_SECONDS


def test_criterion_5_norms(say):
    grid = make_grid(24, 32)
    p2 = opnorm_estimate(KernelId.KDBAR, 2.0, grid, trials=4).value
    eq = norm_ratio(KernelId.KDBAR, equality_family(grid), 2.0)
    lb = {p: opnorm_estimate(KernelId.KDBAR, p, grid, trials=4).value for p in (2.5, 3.0)}
    in_range = KDBAR_L2_RANGE[0] <= p2 <= KDBAR_L2_RANGE[1]
    eq_ok = abs(eq - 1.0) <= EQUALITY_TOL
    lb_ok = all(v >= p2 - LOWER_BOUND_SLACK for v in lb.values())
    say(5, in_range and eq_ok and lb_ok,
        f"||Kdbar||_2 estimate {p2:.12f} in {list(KDBAR_L2_RANGE)}; equality ratio {eq:.12f}; "
        f"lower bounds p=2.5: {lb[2.5]:.6f}, p=3: {lb[3.0]:.6f} (>= {p2 - LOWER_BOUND_SLACK:.6f})")
    assert in_range
    assert eq_ok
    assert lb_ok


def test_criterion_6_nonterminating(say):
    t0 = time.perf_counter()
    p = canonical_params(0.3, 0.3)
    omega = ConformalMapSeries([0, 1, 0.25])
    H = BoundaryFunction.from_dict(SMOOTH_H)
    sol = solve_series(p, H, omega, SolverConfig())
    t = p.t_norm

    # weighted L2 terms ||F_n||_2 t^n over the last five terms
    w = np.array([r.norm_F_2 * t**r.n for r in sol.report.records])
    last_ratio = float(np.max(w[-5:] / w[-6:-1]))
    decay_ok = last_ratio < WEIGHTED_RATIO_MAX

    # residual of S_m, m = 2..8, against log t
    omega_ratio = _frame_factor(omega, sol.field.grid)
    ms = np.arange(2, 9)
    res = np.array([residual_M(p, omega_ratio, sol.partial_sums[m]) for m in ms])
    slope = float(np.polyfit(ms, np.log(res), 1)[0])
    slope_rel = slope / np.log(t)
    slope_ok = abs(slope_rel - 1.0) <= SLOPE_REL_TOL

    cf = fd_solve(p, omega, H, 128)
    m = cf.inside
    fd_gap = float(np.abs(cf.values[m] - sol.field(cf.z[m])).max())
    fd_ok = fd_gap <= FD_DISCREPANCY
    elapsed = time.perf_counter() - t0
    _boundary_errors[6] = _all_boundary_errors(sol, H)
    ok = decay_ok and slope_ok and fd_ok and elapsed < NONTERMINATING_SECONDS
    say(6, ok, f"t_norm {t:.4f}; stop {sol.report.stop_reason} after {sol.report.terms_used} terms; "
               f"last-5 weighted ratio {last_ratio:.3f} (< {WEIGHTED_RATIO_MAX}); residual slope {slope:.4f} "
               f"= {slope_rel:.3f} x log(t_norm) (needs 1 +- {SLOPE_REL_TOL}); FD gap n=128 {fd_gap:.2e} "
               f"(<= {FD_DISCREPANCY:g}); runtime {elapsed:.1f}s")
    assert decay_ok
    assert fd_ok
    assert elapsed < NONTERMINATING_SECONDS
    assert slope_ok, (
        f"residual slope {slope:.4f} is {slope_rel:.3f} x log(t_norm); residuals {res.tolist()}"
    )


def test_criterion_7_boundary(say):
    missing = [k for k in (1, 2, 3, 6) if k not in _boundary_errors]
    if missing:
        # criteria ran out of order or were deselected; recompute what is needed
        for k in missing:
            {1: test_criterion_1_harmonic, 2: test_criterion_2_lame, 3: test_criterion_3_skew,
             6: _boundary_only_case_6}[k](lambda *a: None)
    worst = max(_boundary_errors[k] for k in (1, 2, 3, 6))
    detail = ", ".join(f"case {k}: {_boundary_errors[k]:.1e}" for k in (1, 2, 3, 6))
    say(7, worst <= BOUNDARY_TOL, f"max boundary error over all partial sums {detail} (<= {BOUNDARY_TOL:g})")
    assert worst <= BOUNDARY_TOL


def _boundary_only_case_6(_say):
    H = BoundaryFunction.from_dict(SMOOTH_H)
    sol = solve_series(canonical_params(0.3, 0.3), H, ConformalMapSeries([0, 1, 0.25]), SolverConfig())
    _boundary_errors[6] = _all_boundary_errors(sol, H)


def _cli_solve(tmp_path, name, alpha):
    cfg = {"command": "solve", "tau": 0.2, "sigma": 0.2,
           "boundary": {"holder": {"alpha": alpha, "modes": 64, "seed": 0}},
           "grid": {"K": 64, "J": 80}, "output_dir": str(tmp_path / name)}
    path = tmp_path / f"{name}.json"
    path.write_text(json.dumps(cfg))
    code = cli_main(["--config", str(path), "--quiet"])
    return code, json.loads((tmp_path / name / "summary.json").read_text())


def test_criterion_8_holder(say, tmp_path):
    code_a, good = _cli_solve(tmp_path, "alpha075", 0.75)
    code_b, rough = _cli_solve(tmp_path, "alpha030", 0.3)
    good_ok = code_a == 0 and good["stop_reason"] == "tail_converged"
    rough_ok = (rough["stop_reason"] in ("tail_converged", "term_vanished", "max_terms", "diverging")
                and any("decay exponent" in w for w in rough["warnings"]))
    say(8, good_ok and rough_ok,
        f"alpha=0.75: {good['stop_reason']} in {good['terms_used']} terms, warnings {len(good['warnings'])}; "
        f"alpha=0.3: {rough['stop_reason']} in {rough['terms_used']} terms, "
        f"decay exponent {rough['decay_exponent']:.3f} with warning: {bool(rough['warnings'])}")
    assert good_ok
    assert rough_ok


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
