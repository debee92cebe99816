"""Canonical parameters of the perturbed Laplace equation.

A strongly elliptic system in canonical form is described by two real
parameters ``tau`` and ``sigma`` in ``[0, 1)``.  After separating the
Laplacian, the equation reads

    d dbar f + |T| d^2 (T0 f) = 0,

where ``T0 = alpha0 * I + beta0 * C`` is an affine conjugation operator of
unit norm and ``|T| = (tau + sigma) / (1 + sigma * tau)`` is the small
parameter of the perturbation series.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class StrongEllipticityError(ValueError):
    """Raised when (tau, sigma) fall outside the strongly elliptic range."""


class DegenerateOperatorError(ValueError):
    """Raised when inverting an affine conjugation operator with |alpha| == |beta|."""


@dataclass(frozen=True)
class AffineConjOp:
    """The real-linear map ``w -> alpha * w + beta * conj(w)``."""

    alpha: complex
    beta: complex

    def __call__(self, w):
        return affine_apply(self, w)

    @property
    def norm(self) -> float:
        return abs(self.alpha) + abs(self.beta)

    @property
    def invertible(self) -> bool:
        return abs(self.alpha) != abs(self.beta)

    def inverse(self) -> "AffineConjOp":
        det = abs(self.alpha) ** 2 - abs(self.beta) ** 2
        if det == 0:
            raise DegenerateOperatorError(
                f"operator with |alpha| = |beta| = {abs(self.alpha)} is not invertible"
            )
        return AffineConjOp(np.conj(self.alpha) / det, -self.beta / det)

    def compose(self, other: "AffineConjOp") -> "AffineConjOp":
        """Return ``self o other``."""
        a, b = self.alpha, self.beta
        c, d = other.alpha, other.beta
        return AffineConjOp(a * c + b * np.conj(d), a * d + b * np.conj(c))


def affine_apply(op: AffineConjOp, w):
    """Apply ``alpha * w + beta * conj(w)``; works elementwise on arrays."""
    return op.alpha * w + op.beta * np.conj(w)


@dataclass(frozen=True)
class CanonicalParams:
    tau: float
    sigma: float
    t_norm: float
    alpha0: float
    beta0: float

    @property
    def T0(self) -> AffineConjOp:
        return AffineConjOp(self.alpha0, self.beta0)

    @property
    def T(self) -> AffineConjOp:
        return AffineConjOp(self.t_norm * self.alpha0, self.t_norm * self.beta0)

    @property
    def is_laplace(self) -> bool:
        return self.t_norm == 0.0


def canonical_params(tau: float, sigma: float) -> CanonicalParams:
    """Derive ``|T|``, ``alpha0`` and ``beta0`` from ``(tau, sigma)``.

    For ``tau = sigma = 0`` the normalized operator is undefined; we return
    ``(alpha0, beta0) = (1, 0)`` so that ``T0`` is the identity.  It never
    matters, because ``|T| = 0`` then.
    """
    tau = float(tau)
    sigma = float(sigma)
    for name, value in (("tau", tau), ("sigma", sigma)):
        if not (0.0 <= value < 1.0) or not np.isfinite(value):
            raise StrongEllipticityError(
                f"{name}={value!r} violates the strong ellipticity bound 0 <= {name} < 1"
            )
    if tau + sigma == 0.0:
        return CanonicalParams(tau, sigma, 0.0, 1.0, 0.0)
    t_norm = (tau + sigma) / (1.0 + sigma * tau)
    denom = (tau + sigma) * (1.0 - sigma * tau)
    alpha0 = tau * (1.0 - sigma**2) / denom
    beta0 = sigma * (1.0 - tau**2) / denom
    return CanonicalParams(tau, sigma, t_norm, alpha0, beta0)
