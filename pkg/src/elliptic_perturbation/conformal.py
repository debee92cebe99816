"""Conformal maps of the disk given by truncated power series."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .field import DiskField, PolarGrid, analyze


class InvalidMapError(ValueError):
    """Raised for power series that fail the univalence check."""


@dataclass(frozen=True, eq=False)
class ConformalMapSeries:
    """``omega(z) = sum_m a_m z^m`` on the closed unit disk."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).ravel()
        if c.size < 2:
            c = np.concatenate([c, np.zeros(2 - c.size, dtype=complex)])
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @property
    def univalence_margin(self) -> float:
        """``|a_1| - sum_{m>=2} m |a_m|``; positive margin implies univalence on the closed disk."""
        m = np.arange(self.coeffs.size)
        return float(abs(self.coeffs[1]) - np.sum(m[2:] * np.abs(self.coeffs[2:])))

    @property
    def is_identity(self) -> bool:
        return bool(self.coeffs[1] == 1 and not np.any(self.coeffs[2:]) and self.coeffs[0] == 0)

    @property
    def has_constant_ratio(self) -> bool:
        return not np.any(self.coeffs[2:])

    def check(self) -> "ConformalMapSeries":
        if self.coeffs[1] == 0 or self.univalence_margin <= 0:
            raise InvalidMapError(
                f"map fails the univalence check (margin {self.univalence_margin:.3g} <= 0)"
            )
        return self

    def __call__(self, z):
        return np.polynomial.polynomial.polyval(np.asarray(z, dtype=complex), self.coeffs)

    def derivative(self, z):
        d = np.polynomial.polynomial.polyder(self.coeffs)
        return np.polynomial.polynomial.polyval(np.asarray(z, dtype=complex), d)

    def second_derivative(self, z):
        d = np.polynomial.polynomial.polyder(self.coeffs, 2)
        return np.polynomial.polynomial.polyval(np.asarray(z, dtype=complex), d)

    def ratio(self, z):
        """``conj(omega'(z)) / omega'(z)`` pointwise."""
        d = self.derivative(z)
        return np.conj(d) / d

    def ratio_d(self, z):
        """``d/dz`` of the ratio: ``-conj(omega') omega'' / omega'^2``."""
        d = self.derivative(z)
        return -np.conj(d) * self.second_derivative(z) / d**2

    # built-in families
    @classmethod
    def identity(cls) -> "ConformalMapSeries":
        return cls([0, 1])

    @classmethod
    def affine(cls, a: complex, b: complex = 0) -> "ConformalMapSeries":
        return cls([b, a]).check()

    @classmethod
    def monomial_perturbation(cls, c: complex, m: int) -> "ConformalMapSeries":
        """``z + c z^m`` with ``m |c| < 1``."""
        if m < 2:
            raise ValueError("m must be >= 2")
        coeffs = np.zeros(m + 1, dtype=complex)
        coeffs[1] = 1
        coeffs[m] = c
        return cls(coeffs).check()

    def to_pairs(self) -> list:
        return [[float(c.real), float(c.imag)] for c in self.coeffs]

    @classmethod
    def from_pairs(cls, pairs) -> "ConformalMapSeries":
        return cls([complex(re, im) for re, im in pairs])


def derivative_ratio(omega: ConformalMapSeries, grid: PolarGrid) -> DiskField:
    """The frame factor ``conj(omega') / omega'`` as a disk field."""
    omega.check()
    r, t = grid.polar_mesh()
    return analyze(grid, omega.ratio(r * np.exp(1j * t)))


def pushforward(omega: ConformalMapSeries, r, t) -> np.ndarray:
    """Physical points ``omega(r e^{it})``."""
    r = np.asarray(r, dtype=float)
    if np.any(r < 0) or np.any(r > 1.0 + 1e-12):
        raise ValueError("pushforward requires points in the closed unit disk")
    return omega(r * np.exp(1j * np.asarray(t, dtype=float)))
