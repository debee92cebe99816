"""scikit-learn style wrapper around :func:`solve_series`."""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from ._validation import check_boundary, check_disk_points
from .canon import canonical_params
from .conformal import ConformalMapSeries
from .solver import SolverConfig, solve_series


class PerturbationSeriesSolver(BaseEstimator):
    """Solve the disk Dirichlet problem for one boundary datum.

    ``fit`` takes the boundary datum (a BoundaryFunction, a ``{k: h_k}``
    mapping, or equispaced samples) and sums the series.  ``predict`` takes
    disk points as an ``(n, 2)`` array of ``(x, y)`` and returns the complex
    solution there.

    Parameters
    ----------
    tau, sigma : float
        Canonical parameters, ``0 <= tau < 1`` and ``0 <= sigma < 1``.
    map_coeffs : sequence of complex or None
        Taylor coefficients ``a_0, a_1, ...`` of the conformal map; ``None``
        is the identity.
    max_terms, tail_tol, p_exponent, max_mode, radial_count
        Forwarded to :class:`SolverConfig`.
    """

    def __init__(self, tau=0.0, sigma=0.0, map_coeffs=None, max_terms=60, tail_tol=1e-10,
                 p_exponent=2.2, max_mode=32, radial_count=48):
        self.tau = tau
        self.sigma = sigma
        self.map_coeffs = map_coeffs
        self.max_terms = max_terms
        self.tail_tol = tail_tol
        self.p_exponent = p_exponent
        self.max_mode = max_mode
        self.radial_count = radial_count

    def fit(self, X, y=None):
        """Sum the series for boundary datum ``X``.  ``y`` is ignored."""
        self.params_ = canonical_params(self.tau, self.sigma)
        self.config_ = SolverConfig(max_terms=self.max_terms, tail_tol=self.tail_tol,
                                    p_exponent=self.p_exponent, max_mode=self.max_mode,
                                    radial_count=self.radial_count)
        self.boundary_ = check_boundary(X, self.max_mode)
        omega = None if self.map_coeffs is None else ConformalMapSeries(np.asarray(self.map_coeffs, dtype=complex))
        self.solution_ = solve_series(self.params_, self.boundary_, omega, self.config_)
        self.report_ = self.solution_.report
        self.stop_reason_ = self.report_.stop_reason
        self.n_terms_ = self.report_.terms_used
        return self

    def predict(self, X):
        check_is_fitted(self, "solution_")
        z = check_disk_points(X)
        return self.solution_.field(z)

    def predict_physical(self, X):
        """``(omega(z), F(z))`` at disk points ``X``."""
        check_is_fitted(self, "solution_")
        z = check_disk_points(X)
        omega = self.solution_.omega or ConformalMapSeries.identity()
        return omega(z), self.solution_.field(z)
