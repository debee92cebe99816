"""Perturbation-series solver for the transplanted Dirichlet problem.

The terms are

    F_0 = P[H],    F_n = K[Omega * d(T0 F_{n-1})],   n >= 1,

with ``d(T0 F) = alpha0 dF + beta0 conj(dbar F)``.  Derivatives of each term
come from the companion operators ``Kd`` and ``Kdbar`` instead of numerical
differentiation, so only the residual check differentiates spectrally.
"""
from __future__ import annotations

import csv
import json
import logging
import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from .canon import CanonicalParams
from .conformal import ConformalMapSeries, derivative_ratio, pushforward
from .field import DiskField, PolarGrid, conj_field, lp_norm, make_grid, synthesize, wirtinger_derivatives
from .operators import BoundaryFunction, beurling_Kd, green_volume_K, kdbar, poisson_extend

logger = logging.getLogger(__name__)

STOP_REASONS = ("tail_converged", "term_vanished", "max_terms", "diverging")

VANISH_RTOL = 1e-13
VANISH_RUN = 2
DIVERGE_RUN = 10
RATIO_WINDOW = 5
RESIDUAL_RADIUS = 0.9


@dataclass(frozen=True)
class SolverConfig:
    max_terms: int = 60
    tail_tol: float = 1e-10
    p_exponent: float = 2.2
    max_mode: int = 32
    radial_count: int = 48

    def __post_init__(self):
        if self.tail_tol <= 0:
            raise ValueError(f"tail_tol must be positive, got {self.tail_tol!r}")
        if not self.p_exponent > 2:
            raise ValueError(f"p_exponent must exceed 2, got {self.p_exponent!r}")
        if self.max_terms < 0:
            raise ValueError(f"max_terms must be >= 0, got {self.max_terms!r}")

    @property
    def grid(self) -> PolarGrid:
        return make_grid(self.max_mode, self.radial_count)


@dataclass
class TermRecord:
    n: int
    norm_F: float
    norm_DF: float
    ratio: float | None
    weighted_term: float
    norm_F_2: float
    norm_DF_2: float


@dataclass
class SeriesReport:
    records: list = dc_field(default_factory=list)
    stop_reason: str | None = None
    tail_estimate: float | None = None
    residual_norm: float | None = None
    boundary_error: float | None = None
    t_norm: float = 0.0
    p_exponent: float = 2.2
    decay_exponent: float | None = None
    warnings: list = dc_field(default_factory=list)

    @property
    def terms_used(self) -> int:
        return len(self.records)

    def ratios(self) -> np.ndarray:
        return np.array([np.nan if r.ratio is None else r.ratio for r in self.records[1:]])

    def weighted_terms(self) -> np.ndarray:
        return np.array([r.weighted_term for r in self.records])

    def summary(self) -> dict:
        return {
            "stop_reason": self.stop_reason,
            "terms_used": self.terms_used,
            "tail_estimate": self.tail_estimate,
            "residual": self.residual_norm,
            "boundary_error": self.boundary_error,
            "t_norm": self.t_norm,
            "p_exponent": self.p_exponent,
            "decay_exponent": self.decay_exponent,
            "warnings": list(self.warnings),
        }

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["n", "norm_F", "norm_DF", "ratio", "weighted_term"])
            for rec in self.records:
                ratio = "" if rec.ratio is None else repr(rec.ratio)
                writer.writerow([rec.n, repr(rec.norm_F), repr(rec.norm_DF), ratio, repr(rec.weighted_term)])

    def write_json(self, path, **extra) -> None:
        payload = dict(self.summary(), **extra)
        with open(path, "w") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")


@dataclass
class Solution:
    field: DiskField
    report: SeriesReport
    partial_sums: list
    terms: list
    omega: ConformalMapSeries | None = None

    def __call__(self, z):
        return self.field(z)

    def physical_samples(self, r, t):
        """Pairs ``(omega(z), F(z))`` at disk points ``z = r e^{it}``."""
        values = synthesize(self.field, r, t)
        omega = self.omega or ConformalMapSeries.identity()
        return pushforward(omega, r, t), values


def _dnorm(dF: DiskField, dbarF: DiskField, p: float) -> float:
    return max(lp_norm(dF, p), lp_norm(dbarF, p))


def iterate_step(params: CanonicalParams, omega_ratio: DiskField | None, F_prev: DiskField,
                 dF_prev: DiskField, dbarF_prev: DiskField):
    """One term of the series: ``(K[W], Kd[W], Kdbar[W])``.

    ``W = omega_ratio * (alpha0 dF_prev + beta0 conj(dbarF_prev))``;
    ``omega_ratio=None`` means the identity frame.
    """
    grids = {F_prev.grid, dF_prev.grid, dbarF_prev.grid}
    if omega_ratio is not None:
        grids.add(omega_ratio.grid)
    if len(grids) != 1:
        raise ValueError("iterate_step inputs must share one grid")
    W = params.alpha0 * dF_prev + params.beta0 * conj_field(dbarF_prev)
    if omega_ratio is not None:
        W = omega_ratio * W
    return green_volume_K(W), beurling_Kd(W), kdbar(W)


def _frame_factor(omega: ConformalMapSeries | None, grid: PolarGrid) -> DiskField | None:
    if omega is None or omega.is_identity:
        return None
    omega.check()
    if omega.has_constant_ratio:
        a = omega.coeffs[1]
        return DiskField.zeros(grid) + np.conj(a) / a
    return derivative_ratio(omega, grid)


def residual_M(params: CanonicalParams, omega_ratio: DiskField | None, S: DiskField,
               radius: float = RESIDUAL_RADIUS) -> float:
    """``L2`` norm over ``|z| <= radius`` of ``d dbar S + |T| d(Omega d(T0 S))``."""
    dS, dbarS = wirtinger_derivatives(S)
    lap = wirtinger_derivatives(dbarS)[0]
    G = params.alpha0 * dS + params.beta0 * conj_field(dbarS)
    if omega_ratio is not None:
        G = omega_ratio * G
    R = lap + params.t_norm * wirtinger_derivatives(G)[0]
    return disk_l2_norm(R, radius)


def disk_l2_norm(field: DiskField, radius: float) -> float:
    grid = field.grid
    x, w = np.polynomial.legendre.leggauss(grid.radial_count)
    rho = 0.5 * radius * (x + 1.0)
    w = 0.5 * radius * w * rho
    M = 2 * grid.angular_count
    t = 2.0 * np.pi * np.arange(M) / M
    vals = synthesize(field, rho[:, None], t[None, :])
    return float(math.sqrt((2.0 * np.pi / M) * np.sum(w[:, None] * np.abs(vals) ** 2)))


def boundary_error(S: DiskField, H: BoundaryFunction, n_angles: int | None = None) -> float:
    n = n_angles or 4 * S.grid.angular_count
    theta = 2.0 * np.pi * np.arange(n) / n
    return float(np.max(np.abs(S.trace(theta) - H(theta))))


def solve_series(params: CanonicalParams, H: BoundaryFunction, omega: ConformalMapSeries | None = None,
                 cfg: SolverConfig | None = None) -> Solution:
    """Sum ``S_m = sum_n F_n |T|^n`` until the tail is below ``cfg.tail_tol``.

    Every return carries a ``stop_reason``; ``diverging`` means the observed
    ratio times ``|T|`` stayed at or above 1 for ten consecutive terms.
    """
    cfg = cfg or SolverConfig()
    grid = cfg.grid
    p = cfg.p_exponent
    t = params.t_norm
    omega_ratio = _frame_factor(omega, grid)

    report = SeriesReport(t_norm=t, p_exponent=p)
    report.decay_exponent = H.decay_exponent()
    if report.decay_exponent is not None and report.decay_exponent <= 0.5:
        report.warnings.append(
            f"boundary datum Fourier decay exponent {report.decay_exponent:.3f} <= 1/2: "
            "Holder exponent above 1/2 not indicated, convergence is not guaranteed"
        )

    F, dF, dbarF = poisson_extend(H, grid)
    norm_F0 = lp_norm(F, p)
    norm_DF_prev = _dnorm(dF, dbarF, p)
    report.records.append(TermRecord(0, norm_F0, norm_DF_prev, None, norm_F0,
                                     lp_norm(F, 2.0), _dnorm(dF, dbarF, 2.0)))
    S = F
    partial_sums = [S]
    terms = [F]

    if t == 0.0 or norm_F0 == 0.0:
        report.stop_reason = "term_vanished"
    vanished_run = 0
    diverge_run = 0
    n = 0
    while report.stop_reason is None:
        if n >= cfg.max_terms:
            report.stop_reason = "max_terms"
            break
        n += 1
        F, dF, dbarF = iterate_step(params, omega_ratio, F, dF, dbarF)
        norm_F = lp_norm(F, p)
        norm_DF = _dnorm(dF, dbarF, p)
        if not (np.isfinite(norm_F) and np.isfinite(norm_DF)):
            report.stop_reason = "diverging"
            report.warnings.append(f"non-finite term norm at n={n}")
            break
        ratio = norm_DF / norm_DF_prev if norm_DF_prev > 0 else None
        weighted = norm_F * t**n
        report.records.append(TermRecord(n, norm_F, norm_DF, ratio, weighted,
                                         lp_norm(F, 2.0), _dnorm(dF, dbarF, 2.0)))
        S = S + t**n * F
        partial_sums.append(S)
        terms.append(F)
        norm_DF_prev = norm_DF

        vanished_run = vanished_run + 1 if norm_F < VANISH_RTOL * norm_F0 else 0
        if vanished_run >= VANISH_RUN:
            report.stop_reason = "term_vanished"
            break

        window = [r.ratio for r in report.records[-RATIO_WINDOW:] if r.ratio is not None]
        if window:
            q_bar = max(window)
            if q_bar * t < 1.0:
                report.tail_estimate = norm_F * t ** (n + 1) / (1.0 - q_bar * t)
            else:
                report.tail_estimate = None
        if ratio is not None and ratio * t >= 1.0:
            diverge_run += 1
        else:
            diverge_run = 0
        if diverge_run >= DIVERGE_RUN:
            report.stop_reason = "diverging"
            report.warnings.append(
                f"observed ratio q*|T| >= 1 for {DIVERGE_RUN} consecutive terms; "
                "the discretized series does not contract at this resolution"
            )
            break
        if (report.tail_estimate is not None and len(window) >= min(RATIO_WINDOW, 3)
                and report.tail_estimate < cfg.tail_tol):
            report.stop_reason = "tail_converged"
            break

    if report.stop_reason == "term_vanished":
        report.tail_estimate = 0.0
    report.residual_norm = residual_M(params, omega_ratio, S)
    report.boundary_error = boundary_error(S, H)
    logger.info("series stopped: %s after %d terms", report.stop_reason, report.terms_used)
    return Solution(S, report, partial_sums, terms, omega)
