"""Direct quadrature of the disk integrals, independent of the mode formulas.

The integrals are evaluated in polar coordinates centred at the target point
``z``: ``zeta = z + s e^{i psi}``.  The area element ``s ds dpsi`` cancels
the ``1/(zeta - z)`` singularity, and for the Beurling kernel the
principal value is taken over ``{s > eps}`` with the constant part
``phi(z)`` integrated in closed form.  Richardson extrapolation over
``eps, eps/2`` removes the ``O(eps^2)`` truncation.
"""
from __future__ import annotations

import numpy as np

from ..field import DiskField
from ..operators import KernelId


def _chord(z: complex, psi: np.ndarray) -> np.ndarray:
    """Distance from ``z`` to the unit circle along direction ``e^{i psi}``."""
    b = np.real(np.conj(z) * np.exp(1j * psi))
    return -b + np.sqrt(b * b + 1.0 - abs(z) ** 2)


def _radial_integral(phi: DiskField, kernel: KernelId, z: complex, eps: float, n_psi: int, n_s: int):
    psi = 2.0 * np.pi * np.arange(n_psi) / n_psi
    smax = _chord(z, psi)
    x, w = np.polynomial.legendre.leggauss(n_s)
    lo = eps if kernel is KernelId.BEURLING_KD else 0.0
    half = 0.5 * (smax - lo)
    s = lo + half[:, None] * (x[None, :] + 1.0)
    ws = half[:, None] * w[None, :]
    e = np.exp(1j * psi)[:, None]
    zeta = z + s * e
    vals = phi(zeta)
    dpsi = 2.0 * np.pi / n_psi
    zc = np.conj(z)
    if kernel is KernelId.GREEN_K:
        # (1/(zeta-z)) s = e^{-i psi}
        integrand = (np.conj(e) + zc * s / (1.0 - zeta * zc)) * vals
        return np.sum(integrand * ws) * dpsi / np.pi
    if kernel is KernelId.KDBAR:
        integrand = vals * s / (1.0 - zeta * zc) ** 2
        return np.sum(integrand * ws) * dpsi / np.pi - phi(np.array([z]))[0]
    # Beurling: (1/(zeta-z)^2) s = e^{-2 i psi} / s
    phi_z = phi(np.array([z]))[0]
    integrand = np.conj(e) ** 2 * (vals - phi_z) / s
    regular = np.sum(integrand * ws) * dpsi
    # constant part: phi(z) int e^{-2i psi} (log smax - log eps) dpsi; the log eps term integrates to 0
    const = phi_z * np.sum(np.exp(-2j * psi) * np.log(smax)) * dpsi
    return (regular + const) / np.pi


def bruteforce_kernel(kernel: KernelId, phi: DiskField, z: complex, epsilon: float = 1e-3,
                      n_psi: int = 128, n_s: int = 64) -> complex:
    """Evaluate ``K``, ``Kd`` or ``Kdbar`` of ``phi`` at one interior point."""
    kernel = KernelId(kernel)
    z = complex(z)
    if not abs(z) < 1.0:
        raise ValueError(f"bruteforce_kernel needs an interior point, got |z| = {abs(z)}")
    if kernel is not KernelId.BEURLING_KD:
        return complex(_radial_integral(phi, kernel, z, 0.0, n_psi, n_s))
    if epsilon <= 0:
        raise ValueError("epsilon must be positive for the principal-value kernel")
    eps = min(epsilon, 0.5 * (1.0 - abs(z)))
    coarse = _radial_integral(phi, kernel, z, eps, n_psi, n_s)
    fine = _radial_integral(phi, kernel, z, eps / 2, n_psi, n_s)
    return complex((4.0 * fine - coarse) / 3.0)
