"""Boundary extension and volume operators on the unit disk.

All three volume operators come from the Green function of ``d dbar`` on the
disk.  For an input mode ``phi = c(rho) e^{ik theta}`` each one maps into a
single output mode, with a radial kernel obtained from the geometric
expansions of ``1/(zeta - z)`` (split at ``rho = r``) and of
``1/(1 - zeta conj(z))``:

================  ===========  =================================================
operator          output mode  radial part at radius ``r``
================  ===========  =================================================
K, ``k >= 1``     ``k - 1``    ``2 int_r^1 c (r/rho)^(k-1) d rho``
K, ``k <= 0``     ``k - 1``    ``-2 int_0^r c (rho/r)^(1-k) d rho + 2 r^(1-k) m_k``
Kd, ``k >= 2``    ``k - 2``    ``2(k-1) int_r^1 c (r/rho)^(k-2) d rho / rho - c(r)``
Kd, ``k == 1``    ``-1``       ``-c(r)``
Kd, ``k <= 0``    ``k - 2``    ``2(1-k) int_0^1 c(r s) s^(1-k) ds - c(r)``
Kdbar, ``k >= 1`` ``k``        ``-c(r)``
Kdbar, ``k <= 0`` ``k``        ``2(1-k) r^(-k) m_k - c(r)``
================  ===========  =================================================

with the moment ``m_k = int_0^1 c rho^(1-k) d rho``.  The ``-c(r)`` terms of
``Kd`` come from differentiating the limits of the split integrals; they are
what turns the ring-split sum into the disk-exclusion principal value.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .field import DiskField, PolarGrid


class KernelId(enum.Enum):
    GREEN_K = "K"
    BEURLING_KD = "Kd"
    KDBAR = "Kdbar"


@dataclass(frozen=True, eq=False)
class BoundaryFunction:
    """Angular Fourier coefficients ``h_k``, ``-K <= k <= K``, of a boundary datum."""

    coeffs: np.ndarray
    holder_exponent_estimate: float | None = None

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).ravel()
        if c.size % 2 != 1:
            raise ValueError("boundary coefficients must have odd length 2K+1")
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @property
    def max_mode(self) -> int:
        return (self.coeffs.size - 1) // 2

    @property
    def modes(self) -> np.ndarray:
        return np.arange(-self.max_mode, self.max_mode + 1)

    def coeff(self, k: int) -> complex:
        if abs(k) > self.max_mode:
            return 0j
        return complex(self.coeffs[k + self.max_mode])

    @classmethod
    def from_dict(cls, modes: dict, max_mode: int | None = None) -> "BoundaryFunction":
        K = max(abs(int(k)) for k in modes) if max_mode is None else max_mode
        c = np.zeros(2 * K + 1, dtype=complex)
        for k, v in modes.items():
            c[int(k) + K] += v
        return cls(c)

    @classmethod
    def from_samples(cls, values, max_mode: int) -> "BoundaryFunction":
        """Coefficients from equispaced samples on ``[0, 2 pi)``."""
        values = np.asarray(values, dtype=complex)
        M = values.size
        if M < 2 * max_mode + 1:
            raise ValueError("need at least 2*max_mode+1 samples")
        spec = np.fft.fft(values) / M
        k = np.arange(-max_mode, max_mode + 1)
        return cls(spec[k % M])

    def padded(self, max_mode: int) -> np.ndarray:
        if max_mode < self.max_mode:
            raise ValueError(
                f"boundary datum has modes up to {self.max_mode}, grid band limit is {max_mode}"
            )
        out = np.zeros(2 * max_mode + 1, dtype=complex)
        out[max_mode - self.max_mode : max_mode + self.max_mode + 1] = self.coeffs
        return out

    def __call__(self, theta):
        theta = np.asarray(theta, dtype=float)
        return np.exp(1j * np.multiply.outer(theta, self.modes)) @ self.coeffs

    def is_real(self, tol: float = 1e-14) -> bool:
        return bool(np.allclose(self.coeffs, np.conj(self.coeffs[::-1]), atol=tol, rtol=0))

    def decay_exponent(self, floor: float = 1e-12) -> float | None:
        """Least-squares slope ``beta`` in ``|h_k| ~ C |k|^(-beta)``.

        Uses every ``k >= 1`` whose magnitude (max over ``+-k``) exceeds
        ``floor`` times the largest one; ``None`` when fewer than three
        such modes exist.
        """
        K = self.max_mode
        if K < 1:
            return None
        mags = np.maximum(np.abs(self.coeffs[K + 1 :]), np.abs(self.coeffs[:K][::-1]))
        k = np.arange(1, K + 1)
        if mags.max() == 0.0:
            return None
        keep = mags > floor * mags.max()
        if keep.sum() < 3:
            return None
        slope, _ = np.polyfit(np.log(k[keep]), np.log(mags[keep]), 1)
        return float(-slope)


def poisson_extend(h: BoundaryFunction, grid: PolarGrid):
    """Harmonic extension ``F0`` of ``h`` with its Wirtinger derivatives.

    ``F0 = sum_{k>=0} h_k z^k + sum_{k<0} h_k zbar^|k|``; the derivatives are
    taken mode by mode in closed form.
    """
    K = grid.max_mode
    hk = h.padded(K)
    r = grid.radial_nodes
    modes = grid.modes
    absk = np.abs(modes)
    F0 = hk[:, None] * r[None, :] ** absk[:, None]
    dF0 = np.zeros_like(F0)
    dbarF0 = np.zeros_like(F0)
    for idx, k in enumerate(modes):
        if k >= 1:
            dF0[idx - 1] = k * hk[idx] * r ** (k - 1)
        elif k <= -1 and idx + 1 < len(modes):
            dbarF0[idx + 1] = -k * hk[idx] * r ** (-k - 1)
    return DiskField(grid, F0), DiskField(grid, dF0), DiskField(grid, dbarF0)


def _gauss01(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (x + 1.0), 0.5 * w


@lru_cache(maxsize=None)
def _radial_matrices(grid: PolarGrid):
    """Per-mode ``J x J`` radial matrices for the three volume operators.

    Returned arrays have shape ``(n_modes, J, J)`` and are indexed by the
    *input* mode.
    """
    K = grid.max_mode
    J = grid.radial_count
    Q = J + K // 2 + 8
    u, wq = _gauss01(Q)
    r = grid.radial_nodes

    # inner substitution rho = r s, s in (0,1)
    L_in = grid.interp_matrix(np.outer(r, u).ravel()).reshape(J, Q, J)
    # outer interval rho in (r, 1)
    rho_out = r[:, None] + (1.0 - r[:, None]) * u[None, :]
    L_out = grid.interp_matrix(rho_out.ravel()).reshape(J, Q, J)
    w_out = (1.0 - r[:, None]) * wq[None, :]
    # full-interval moments
    L_full = grid.interp_matrix(u)

    eye = np.eye(J)
    MK = np.zeros((grid.n_modes, J, J))
    MKd = np.zeros_like(MK)
    MKdbar = np.zeros_like(MK)
    for idx, k in enumerate(grid.modes):
        if k >= 1:
            ratio = r[:, None] / rho_out
            G = 2.0 * w_out * ratio ** (k - 1)
            MK[idx] = np.einsum("iq,iqj->ij", G, L_out)
            if k >= 2:
                G = 2.0 * (k - 1) * w_out * ratio ** (k - 2) / rho_out
                MKd[idx] = np.einsum("iq,iqj->ij", G, L_out)
            MKd[idx] -= eye
            MKdbar[idx] = -eye
        else:
            a = 1 - k
            inner = (wq * u**a) @ L_in.transpose(1, 0, 2).reshape(Q, J * J)
            inner = inner.reshape(J, J)
            moment = (wq * u**a) @ L_full
            MK[idx] = -2.0 * r[:, None] * inner + 2.0 * np.outer(r**a, moment)
            MKd[idx] = 2.0 * a * inner - eye
            MKdbar[idx] = 2.0 * a * np.outer(r ** (-k), moment) - eye
    for arr in (MK, MKd, MKdbar):
        arr.flags.writeable = False
    return MK, MKd, MKdbar


_SHIFT = {KernelId.GREEN_K: -1, KernelId.BEURLING_KD: -2, KernelId.KDBAR: 0}
_INDEX = {KernelId.GREEN_K: 0, KernelId.BEURLING_KD: 1, KernelId.KDBAR: 2}


def kernel_matrices(grid: PolarGrid, kernel: KernelId) -> np.ndarray:
    return _radial_matrices(grid)[_INDEX[kernel]]


def apply_kernel(kernel: KernelId, phi: DiskField) -> DiskField:
    """Apply one of the volume operators; output modes past the band are dropped."""
    grid = phi.grid
    mats = kernel_matrices(grid, kernel)
    shift = _SHIFT[kernel]
    out_all = np.einsum("kij,kj->ki", mats, phi.coeffs)
    out = np.zeros_like(out_all)
    if shift == 0:
        out[:] = out_all
    else:
        out[:shift] = out_all[-shift:]
    if kernel is KernelId.GREEN_K:
        out = _zero_trace(grid, out)
    return DiskField(grid, out)


def _zero_trace(grid: PolarGrid, coeffs: np.ndarray) -> np.ndarray:
    # subtract trace * rho^(J-1); the interpolant reproduces it exactly
    trace = coeffs @ grid.trace_row
    bump = grid.radial_nodes ** (grid.radial_count - 1)
    return coeffs - trace[:, None] * bump[None, :]


def green_volume_K(phi: DiskField) -> DiskField:
    """``K[phi](z) = (1/pi) int_D (1/(zeta - z) + zbar/(1 - zeta zbar)) phi dmu``.

    Solves ``d dbar u = -d phi`` with zero boundary trace.
    """
    return apply_kernel(KernelId.GREEN_K, phi)


def beurling_Kd(phi: DiskField) -> DiskField:
    """Principal value ``(1/pi) p.v. int_D phi(zeta) / (zeta - z)^2 dmu``."""
    return apply_kernel(KernelId.BEURLING_KD, phi)


def kdbar(phi: DiskField) -> DiskField:
    """``(1/pi) int_D phi(zeta) / (1 - zeta zbar)^2 dmu - phi(z)``."""
    return apply_kernel(KernelId.KDBAR, phi)


OPERATORS = {
    KernelId.GREEN_K: green_volume_K,
    KernelId.BEURLING_KD: beurling_Kd,
    KernelId.KDBAR: kdbar,
}
