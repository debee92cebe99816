"""Perturbation-series solver for the Dirichlet problem of first-order-coupled
elliptic systems on simply connected domains, transplanted to the unit disk."""
from .canon import (AffineConjOp, CanonicalParams, DegenerateOperatorError, StrongEllipticityError,
                    affine_apply, canonical_params)
from .conformal import ConformalMapSeries, InvalidMapError, derivative_ratio, pushforward
from .estimator import PerturbationSeriesSolver
from .field import (DiskField, GridMismatchError, PolarGrid, analyze, conj_field, lp_norm, make_grid, multiply,
                    read_field_csv, synthesize, wirtinger_derivatives, write_field_csv)
from .operators import (OPERATORS, BoundaryFunction, KernelId, beurling_Kd, green_volume_K, kdbar,
                        poisson_extend)
from .solver import (STOP_REASONS, SeriesReport, Solution, SolverConfig, TermRecord, iterate_step, residual_M,
                     solve_series)

__version__ = "0.1.0"

__all__ = [
    "AffineConjOp", "BoundaryFunction", "CanonicalParams", "ConformalMapSeries", "DegenerateOperatorError",
    "DiskField", "GridMismatchError", "InvalidMapError", "KernelId", "OPERATORS", "PerturbationSeriesSolver",
    "PolarGrid", "STOP_REASONS", "SeriesReport", "Solution", "SolverConfig", "StrongEllipticityError",
    "TermRecord", "affine_apply", "analyze", "beurling_Kd", "canonical_params", "conj_field",
    "derivative_ratio", "green_volume_K", "iterate_step", "kdbar", "lp_norm", "make_grid", "multiply",
    "poisson_extend", "pushforward", "read_field_csv", "residual_M", "solve_series", "synthesize",
    "wirtinger_derivatives", "write_field_csv",
]
