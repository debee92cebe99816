"""Polar-spectral representation of functions on the closed unit disk.

A :class:`DiskField` stores angular Fourier coefficients ``c_k(r_j)`` for
``-K <= k <= K`` at Chebyshev radial nodes ``r_j`` in ``(0, 1)``.  Values
between (and outside) the nodes come from barycentric interpolation of the
radial profile of each mode, so ``rho = 1`` is reached by extrapolation of
the Chebyshev interpolant.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Callable

import numpy as np


class GridMismatchError(ValueError):
    """Raised when fields living on different grids are combined."""


@dataclass(frozen=True)
class PolarGrid:
    """Tensor grid of equispaced angles and first-kind Chebyshev radii.

    The radial weights integrate against ``rho d rho`` on ``[0, 1]`` (Fejer's
    first rule), exactly for ``rho**m`` with ``m <= radial_count - 2``.
    """

    max_mode: int
    radial_count: int

    @property
    def n_modes(self) -> int:
        return 2 * self.max_mode + 1

    @property
    def modes(self) -> np.ndarray:
        return np.arange(-self.max_mode, self.max_mode + 1)

    @property
    def exactness_degree(self) -> int:
        return self.radial_count - 2

    @cached_property
    def angular_count(self) -> int:
        return _next_pow2(2 * self.max_mode + 2)

    @cached_property
    def _cheb_angles(self) -> np.ndarray:
        j = np.arange(1, self.radial_count + 1)
        return (2 * j - 1) * np.pi / (2 * self.radial_count)

    @cached_property
    def radial_nodes(self) -> np.ndarray:
        nodes = 0.5 * (1.0 - np.cos(self._cheb_angles))
        nodes.flags.writeable = False
        return nodes

    @cached_property
    def radial_weights(self) -> np.ndarray:
        n = self.radial_count
        theta = self._cheb_angles
        ell = np.arange(1, n // 2 + 1)
        s = np.cos(2.0 * np.outer(theta, ell)) / (4.0 * ell**2 - 1.0)
        fejer = (2.0 / n) * (1.0 - 2.0 * s.sum(axis=1))
        w = 0.5 * fejer * self.radial_nodes
        w.flags.writeable = False
        return w

    @cached_property
    def bary_weights(self) -> np.ndarray:
        j = np.arange(self.radial_count)
        return (-1.0) ** j * np.sin(self._cheb_angles)

    @cached_property
    def angles(self) -> np.ndarray:
        return 2.0 * np.pi * np.arange(self.angular_count) / self.angular_count

    @cached_property
    def diff_matrix(self) -> np.ndarray:
        """Radial differentiation matrix acting on nodal values."""
        r = self.radial_nodes
        w = self.bary_weights
        dr = r[:, None] - r[None, :]
        np.fill_diagonal(dr, 1.0)
        D = (w[None, :] / w[:, None]) / dr
        np.fill_diagonal(D, 0.0)
        np.fill_diagonal(D, -D.sum(axis=1))
        return D

    @cached_property
    def trace_row(self) -> np.ndarray:
        """Interpolation weights for the value at ``rho = 1``."""
        return self.interp_matrix(np.array([1.0]))[0]

    def interp_matrix(self, r) -> np.ndarray:
        """Barycentric interpolation matrix from the radial nodes to ``r``."""
        r = np.atleast_1d(np.asarray(r, dtype=float))
        nodes = self.radial_nodes
        w = self.bary_weights
        diff = r[:, None] - nodes[None, :]
        exact = diff == 0.0
        diff[exact] = 1.0
        terms = w[None, :] / diff
        L = terms / terms.sum(axis=1, keepdims=True)
        hit = exact.any(axis=1)
        if hit.any():
            L[hit] = exact[hit].astype(float)
        return L

    def polar_mesh(self):
        """Return ``(r, t)`` arrays of shape ``(radial_count, angular_count)``."""
        return np.meshgrid(self.radial_nodes, self.angles, indexing="ij")


def _next_pow2(n: int) -> int:
    p = 1
    while p < n:
        p *= 2
    return p


@lru_cache(maxsize=None)
def make_grid(max_mode: int = 32, radial_count: int = 48) -> PolarGrid:
    """Build (and cache) a polar grid with band limit ``max_mode``."""
    if int(max_mode) != max_mode or max_mode < 0:
        raise ValueError(f"max_mode must be a nonnegative integer, got {max_mode!r}")
    if int(radial_count) != radial_count or radial_count < 4:
        raise ValueError(f"radial_count must be an integer >= 4, got {radial_count!r}")
    return PolarGrid(int(max_mode), int(radial_count))


def _check_same_grid(a: "DiskField", b: "DiskField") -> None:
    if a.grid != b.grid:
        raise GridMismatchError(f"fields live on different grids: {a.grid} vs {b.grid}")


class DiskField:
    """Immutable function on the disk in polar-spectral form.

    ``coeffs[k + K, j]`` holds ``c_k(r_j)``.
    """

    __slots__ = ("grid", "coeffs")

    def __init__(self, grid: PolarGrid, coeffs):
        coeffs = np.array(coeffs, dtype=complex)
        if coeffs.shape != (grid.n_modes, grid.radial_count):
            raise ValueError(
                f"coefficient array has shape {coeffs.shape}, "
                f"expected {(grid.n_modes, grid.radial_count)}"
            )
        coeffs.flags.writeable = False
        self.grid = grid
        self.coeffs = coeffs

    def __repr__(self):
        return f"DiskField(max_mode={self.grid.max_mode}, radial_count={self.grid.radial_count})"

    @classmethod
    def zeros(cls, grid: PolarGrid) -> "DiskField":
        return cls(grid, np.zeros((grid.n_modes, grid.radial_count), dtype=complex))

    @classmethod
    def from_function(cls, grid: PolarGrid, func: Callable) -> "DiskField":
        """Sample ``func(z)`` on the grid and analyze."""
        r, t = grid.polar_mesh()
        return analyze(grid, func(r * np.exp(1j * t)) * np.ones_like(r))

    @classmethod
    def from_modes(cls, grid: PolarGrid, profiles: dict) -> "DiskField":
        """Build from ``{k: callable(rho) or array}`` radial profiles."""
        coeffs = np.zeros((grid.n_modes, grid.radial_count), dtype=complex)
        for k, prof in profiles.items():
            if abs(k) > grid.max_mode:
                raise ValueError(f"mode {k} exceeds band limit {grid.max_mode}")
            vals = prof(grid.radial_nodes) if callable(prof) else prof
            coeffs[k + grid.max_mode] = vals
        return cls(grid, coeffs)

    def mode(self, k: int) -> np.ndarray:
        return self.coeffs[k + self.grid.max_mode]

    def _wrap(self, coeffs) -> "DiskField":
        return DiskField(self.grid, coeffs)

    def __add__(self, other):
        if isinstance(other, DiskField):
            _check_same_grid(self, other)
            return self._wrap(self.coeffs + other.coeffs)
        coeffs = self.coeffs.copy()
        coeffs[self.grid.max_mode] += other
        return self._wrap(coeffs)

    __radd__ = __add__

    def __neg__(self):
        return self._wrap(-self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, DiskField):
            return multiply(self, other)
        return self._wrap(self.coeffs * other)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self._wrap(self.coeffs / scalar)

    def conj(self) -> "DiskField":
        return conj_field(self)

    def nodal_values(self, angular_count: int | None = None) -> np.ndarray:
        """Values on the ``(radial_count, angular_count)`` tensor grid."""
        return _to_samples(self.coeffs, self.grid.max_mode, angular_count or self.grid.angular_count)

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        return synthesize(self, np.abs(z), np.angle(z))

    def trace(self, theta) -> np.ndarray:
        theta = np.asarray(theta, dtype=float)
        return synthesize(self, np.ones_like(theta), theta)

    def trace_coeffs(self) -> np.ndarray:
        """Fourier coefficients of the boundary trace, ordered ``-K..K``."""
        return self.coeffs @ self.grid.trace_row

    def max_abs_on_grid(self) -> float:
        return float(np.max(np.abs(self.nodal_values())))

    def to_csv(self, path) -> None:
        write_field_csv(self, path)


def _to_samples(coeffs: np.ndarray, K: int, M: int) -> np.ndarray:
    J = coeffs.shape[1]
    spec = np.zeros((J, M), dtype=complex)
    k = np.arange(-K, K + 1)
    spec[:, k % M] = coeffs.T
    return np.fft.ifft(spec, axis=1) * M


def _from_samples(samples: np.ndarray, K: int) -> np.ndarray:
    M = samples.shape[1]
    spec = np.fft.fft(samples, axis=1) / M
    k = np.arange(-K, K + 1)
    return spec[:, k % M].T


def analyze(grid: PolarGrid, samples) -> DiskField:
    """Discrete angular Fourier analysis of samples on the polar mesh."""
    samples = np.asarray(samples, dtype=complex)
    expected = (grid.radial_count, grid.angular_count)
    if samples.shape != expected:
        raise ValueError(f"samples have shape {samples.shape}, expected {expected}")
    return DiskField(grid, _from_samples(samples, grid.max_mode))


def synthesize(field: DiskField, r, t) -> np.ndarray:
    """Evaluate ``sum_k c_k(r) exp(i k t)`` at the points ``(r, t)``."""
    r = np.asarray(r, dtype=float)
    t = np.asarray(t, dtype=float)
    r, t = np.broadcast_arrays(r, t)
    shape = r.shape
    r = r.ravel()
    t = t.ravel()
    if np.any(r < 0.0) or np.any(r > 1.0 + 1e-12):
        raise ValueError("synthesize requires 0 <= r <= 1")
    L = field.grid.interp_matrix(r)
    vals = L @ field.coeffs.T
    phase = np.exp(1j * np.outer(t, field.grid.modes))
    return np.sum(vals * phase, axis=1).reshape(shape)


def multiply(a: DiskField, b: DiskField) -> DiskField:
    """Pointwise product, evaluated on an alias-free angular mesh."""
    _check_same_grid(a, b)
    K = a.grid.max_mode
    M = _next_pow2(3 * K + 2)
    prod = _to_samples(a.coeffs, K, M) * _to_samples(b.coeffs, K, M)
    return DiskField(a.grid, _from_samples(prod, K))


def conj_field(field: DiskField) -> DiskField:
    return DiskField(field.grid, np.conj(field.coeffs[::-1]))


def lp_norm(field: DiskField, p: float = 2.0) -> float:
    """``(int_D |f|^p dmu)^(1/p)`` by quadrature on the polar mesh."""
    if not (1.0 < p < np.inf):
        raise ValueError(f"p must lie in (1, inf), got {p!r}")
    grid = field.grid
    vals = np.abs(field.nodal_values())
    M = grid.angular_count
    integral = (2.0 * np.pi / M) * np.sum(grid.radial_weights[:, None] * vals**p)
    return float(integral ** (1.0 / p))


def wirtinger_derivatives(field: DiskField):
    """Spectral ``(d f, dbar f)``.

    Per mode ``c_k(r) e^{ikt}``: ``d`` gives ``(c' + k c / r) / 2`` in mode
    ``k - 1`` and ``dbar`` gives ``(c' - k c / r) / 2`` in mode ``k + 1``.
    Modes pushed past the band limit are dropped.  Accuracy degrades for
    high modes close to the origin, where ``c / r`` is a small quotient.
    """
    grid = field.grid
    c = field.coeffs
    dc = c @ grid.diff_matrix.T
    kc_r = grid.modes[:, None] * c / grid.radial_nodes[None, :]
    plus = 0.5 * (dc + kc_r)
    minus = 0.5 * (dc - kc_r)
    d = np.zeros_like(c)
    dbar = np.zeros_like(c)
    # mode k -> k-1 (index shift down); mode k -> k+1 (index shift up)
    d[:-1] = plus[1:]
    dbar[1:] = minus[:-1]
    return DiskField(grid, d), DiskField(grid, dbar)


def write_field_csv(field: DiskField, path) -> None:
    grid = field.grid
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["k", "j", "r", "re", "im"])
        for idx, k in enumerate(grid.modes):
            for j, r in enumerate(grid.radial_nodes):
                c = field.coeffs[idx, j]
                writer.writerow([int(k), j, repr(float(r)), repr(float(c.real)), repr(float(c.imag))])


def read_field_csv(path, grid: PolarGrid | None = None) -> DiskField:
    rows = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        for row in reader:
            rows.append((int(row["k"]), int(row["j"]), complex(float(row["re"]), float(row["im"]))))
    if grid is None:
        K = max(abs(k) for k, _, _ in rows)
        J = max(j for _, j, _ in rows) + 1
        grid = make_grid(K, J)
    coeffs = np.zeros((grid.n_modes, grid.radial_count), dtype=complex)
    for k, j, c in rows:
        coeffs[k + grid.max_mode, j] = c
    return DiskField(grid, coeffs)
