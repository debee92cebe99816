"""Closed-form identities of the volume operators, checked two ways."""
from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from ..field import DiskField, PolarGrid, synthesize
from ..operators import OPERATORS, KernelId
from .quadrature import bruteforce_kernel


def _profile(r):
    return r * (1.0 - r**2)


# (name, kernel, input phi(z), closed form of the output)
IDENTITIES = (
    ("K[1] = 0", KernelId.GREEN_K, lambda z: np.ones_like(z), lambda z: np.zeros_like(z)),
    ("K[conj(zeta)] = 0", KernelId.GREEN_K, np.conj, lambda z: np.zeros_like(z)),
    ("K[zeta] = 1 - |z|^2", KernelId.GREEN_K, lambda z: z, lambda z: 1.0 - np.abs(z) ** 2),
    ("Kd[zeta] = -conj(z)", KernelId.BEURLING_KD, lambda z: z, lambda z: -np.conj(z)),
    ("Kdbar[1] = 0", KernelId.KDBAR, lambda z: np.ones_like(z), lambda z: np.zeros_like(z)),
    ("Kdbar[zeta] = -z", KernelId.KDBAR, lambda z: z, lambda z: -z),
    ("Kdbar[c(rho) e^{i theta}] = -phi", KernelId.KDBAR,
     lambda z: _profile(np.abs(z)) * np.exp(1j * np.angle(z)),
     lambda z: -_profile(np.abs(z)) * np.exp(1j * np.angle(z))),
)


@dataclass
class IdentityCheck:
    name: str
    kernel: str
    closed_form_error: float
    oracle_error: float
    passed: bool


def random_interior_points(n: int, seed: int = 0, radius: float = 0.95) -> np.ndarray:
    """``n`` points uniform in area on ``|z| <= radius``."""
    rng = np.random.default_rng(seed)
    return radius * np.sqrt(rng.uniform(size=n)) * np.exp(2j * np.pi * rng.uniform(size=n))


def run_identity_suite(grid: PolarGrid, n_points: int = 10, seed: int = 0, epsilon: float = 1e-3,
                       closed_tol: float = 1e-8, oracle_tol: float = 1e-6) -> list:
    """Each identity: fast operator vs closed form on the grid, and vs the quadrature oracle at random points."""
    R, T = grid.polar_mesh()
    Z = R * np.exp(1j * T)
    pts = random_interior_points(n_points, seed)
    out = []
    for name, kernel, phi_fn, exact_fn in IDENTITIES:
        phi = DiskField.from_function(grid, phi_fn)
        res = OPERATORS[kernel](phi)
        closed = float(np.max(np.abs(res.nodal_values() - exact_fn(Z))))
        fast = synthesize(res, np.abs(pts), np.angle(pts))
        brute = np.array([bruteforce_kernel(kernel, phi, z, epsilon) for z in pts])
        oracle = float(np.max(np.abs(fast - brute)))
        out.append(IdentityCheck(name, kernel.name, closed, oracle,
                                 bool(closed <= closed_tol and oracle <= oracle_tol)))
    return out


def suite_as_dicts(checks) -> list:
    return [asdict(c) for c in checks]
