"""Numerical operator-norm estimates for the disk operators on ``L_p``.

Norms are measured on smooth band-limited fields: polynomials in ``z`` and
``zbar`` whose mode ``k`` radial part is ``rho^|k|`` times a polynomial in
``rho^2`` of degree below the grid resolution.  The grid represents those
exactly and the volume operators map them back into the same class, so the
discrete norm is a faithful lower approximation of the continuous one.
Arbitrary nodal vectors are not used: their interpolants oscillate near the
origin, where the operator output has a logarithmic profile no polynomial
interpolant can follow, and the discrete norm of such vectors is meaningless.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.linalg as sla

from ..field import DiskField, PolarGrid, lp_norm
from ..operators import OPERATORS, KernelId, kernel_matrices

logger = logging.getLogger(__name__)

_SHIFT = {KernelId.GREEN_K: -1, KernelId.BEURLING_KD: -2, KernelId.KDBAR: 0}


@dataclass(frozen=True)
class NormEstimate:
    kernel: KernelId
    p: float
    value: float
    lower_bound_only: bool
    iterations: int

    def as_dict(self) -> dict:
        return {
            "kernel": self.kernel.name,
            "p": self.p,
            "estimate": self.value,
            "kind": "lower_bound" if self.lower_bound_only else "power_iteration",
            "iterations": self.iterations,
        }


@lru_cache(maxsize=None)
def gram_matrix(grid: PolarGrid) -> np.ndarray:
    """``G[i, j] = int_0^1 l_i l_j rho d rho`` for the radial Lagrange basis."""
    x, w = np.polynomial.legendre.leggauss(2 * grid.radial_count + 4)
    u = 0.5 * (x + 1.0)
    w = 0.5 * w * u
    L = grid.interp_matrix(u)
    return L.T @ (w[:, None] * L)


@lru_cache(maxsize=None)
def regular_basis(grid: PolarGrid):
    """Per-mode nodal bases of the smooth subspace, orthonormal for ``2 pi G``.

    Returns an array ``(n_modes, J, D)`` zero-padded past each mode's
    dimension, and the dimensions themselves.
    """
    J = grid.radial_count
    r = grid.radial_nodes
    R = sla.cholesky(2.0 * np.pi * gram_matrix(grid))
    dims = []
    blocks = []
    for k in grid.modes:
        n = max(0, (J - 1 - abs(int(k))) // 2 + 1)
        n = min(n, J // 2)
        if n:
            # rho^|k| P_m(2 rho^2 - 1): well conditioned before orthonormalization
            V = np.stack([r ** abs(k) * np.polynomial.legendre.Legendre.basis(m)(2 * r**2 - 1)
                          for m in range(n)], axis=1)
            Q, _ = np.linalg.qr(R @ V)
            V = sla.solve_triangular(R, Q)
        else:
            V = np.zeros((J, 0))
        dims.append(n)
        blocks.append(V)
    D = max(dims)
    out = np.zeros((grid.n_modes, J, D))
    for i, V in enumerate(blocks):
        out[i, :, : V.shape[1]] = V
    out.flags.writeable = False
    return out, tuple(dims)


@lru_cache(maxsize=None)
def coefficient_operator(grid: PolarGrid, kernel: KernelId) -> np.ndarray:
    """``B[k] = V_{k+s}^T (2 pi G) M_k V_k``: the operator in orthonormal coordinates."""
    V, _ = regular_basis(grid)
    G = 2.0 * np.pi * gram_matrix(grid)
    M = kernel_matrices(grid, kernel)
    s = _SHIFT[kernel]
    n = grid.n_modes
    B = np.zeros((n, V.shape[2], V.shape[2]))
    for i in range(n):
        o = i + s
        if 0 <= o < n:
            B[i] = V[o].T @ G @ M[i] @ V[i]
    B.flags.writeable = False
    return B


def _apply(B, s, x):
    y_all = np.einsum("kij,kj->ki", B, x)
    y = np.zeros_like(y_all)
    if s == 0:
        y[:] = y_all
    else:
        y[:s] = y_all[-s:]
    return y


def _apply_adjoint(B, s, y):
    src = np.zeros_like(y)
    if s == 0:
        src[:] = y
    else:
        src[-s:] = y[:s]
    return np.einsum("kji,kj->ki", B.conj(), src)


def to_field(grid: PolarGrid, x: np.ndarray) -> DiskField:
    """Nodal field from orthonormal coordinates ``x`` of shape ``(n_modes, D)``."""
    V, _ = regular_basis(grid)
    return DiskField(grid, np.einsum("kjd,kd->kj", V, x))


def random_regular(grid: PolarGrid, rng, band: int | None = None) -> np.ndarray:
    """Random orthonormal coordinates limited to ``|k| <= band``."""
    V, dims = regular_basis(grid)
    shape = (grid.n_modes, V.shape[2])
    x = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    for i, (k, d) in enumerate(zip(grid.modes, dims)):
        x[i, d:] = 0.0
        if band is not None and abs(k) > band:
            x[i] = 0.0
    return x


def power_iteration(kernel: KernelId, grid: PolarGrid, x0: np.ndarray, max_iter: int = 300,
                    tol: float = 1e-13):
    """Largest singular value via ``A^* A`` in orthonormal coordinates."""
    kernel = KernelId(kernel)
    if kernel is KernelId.GREEN_K:
        raise ValueError("norm estimation is provided for Kd and Kdbar")
    B = coefficient_operator(grid, kernel)
    s = _SHIFT[kernel]
    x = x0 / np.linalg.norm(x0)
    sigma_old = np.inf
    sigma = 0.0
    it = 0
    for it in range(1, max_iter + 1):
        y = _apply(B, s, x)
        sigma = float(np.linalg.norm(y))
        if abs(sigma - sigma_old) <= tol * max(sigma, 1.0):
            break
        sigma_old = sigma
        z = _apply_adjoint(B, s, y)
        nz = np.linalg.norm(z)
        if nz == 0.0:
            break
        x = z / nz
    logger.debug("power iteration for %s: sigma=%.15g after %d iterations", kernel.name, sigma, it)
    return sigma, x, it


def norm_ratio(kernel: KernelId, phi: DiskField, p: float) -> float:
    """``||A phi||_p / ||phi||_p`` with the grid quadrature norms."""
    n = lp_norm(phi, p)
    return lp_norm(OPERATORS[KernelId(kernel)](phi), p) / n if n > 0 else 0.0


def equality_family(grid: PolarGrid, profile=None) -> DiskField:
    """``c(rho) e^{i theta}``: on these ``Kdbar`` acts as ``-phi``."""
    profile = profile or (lambda r: r * (1.0 - r**2))
    return DiskField.from_modes(grid, {1: profile})


def opnorm_estimate(kernel: KernelId, p: float, grid: PolarGrid, trials: int = 4,
                    seed: int = 0, ascent_steps: int = 80) -> NormEstimate:
    """Estimate ``||A||_p`` for ``A`` in {Kd, Kdbar}.

    ``p = 2``: power iteration on ``A^* A`` from ``trials`` random starts,
    keeping the largest value.  Other ``p``: best ratio over random smooth
    band-limited inputs (plus a known near-extremal input) refined by a
    random-direction ascent.  That is only a lower bound and is labelled so.
    """
    kernel = KernelId(kernel)
    if not (1.0 < p < np.inf):
        raise ValueError(f"p must lie in (1, inf), got {p!r}")
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials!r}")
    if kernel is KernelId.GREEN_K:
        raise ValueError("norm estimation is provided for Kd and Kdbar")
    rng = np.random.default_rng(seed)
    if p == 2.0:
        best, total = 0.0, 0
        for _ in range(trials):
            sigma, _, it = power_iteration(kernel, grid, random_regular(grid, rng))
            best = max(best, sigma)
            total += it
        return NormEstimate(kernel, p, best, False, total)

    band = max(1, grid.max_mode // 2)
    candidates = [to_field(grid, random_regular(grid, rng, band)) for _ in range(trials)]
    if kernel is KernelId.KDBAR:
        candidates.append(equality_family(grid))
    else:
        # Kd maps z^2 = rho^2 e^{2 i theta} to 1 - 2 rho^2, same L2 norm
        candidates.append(DiskField.from_modes(grid, {2: lambda r: r**2}))
    ratios = [norm_ratio(kernel, c, p) for c in candidates]
    i = int(np.argmax(ratios))
    phi, best = candidates[i], ratios[i]
    step = 0.3
    steps = 0
    for steps in range(1, ascent_steps + 1):
        d = to_field(grid, random_regular(grid, rng, band))
        trial = phi + (step * lp_norm(phi, p) / lp_norm(d, p)) * d
        ratio = norm_ratio(kernel, trial, p)
        if ratio > best:
            phi, best = trial, ratio
        else:
            step *= 0.9
    return NormEstimate(kernel, p, float(best), True, steps)
