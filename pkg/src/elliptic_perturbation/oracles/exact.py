"""Closed-form solution families built from polynomials in ``z`` and ``zbar``.

Two families solve the canonical equation exactly:

* LAME (``tau = 0``): ``f = phi + conj(phi) - sigma zbar phi'``,
* SKEW (``sigma = 0``): ``f = psi(zbar - z / tau)``.

Both are assembled as :class:`ZPoly` objects and checked by applying the
operator ``d dbar f + |T| d^2 (T0 f)`` coefficient by coefficient.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from ..canon import CanonicalParams
from ..field import DiskField, PolarGrid
from ..operators import BoundaryFunction


class ZPoly:
    """Polynomial ``sum c[a, b] z^a zbar^b`` with complex coefficients."""

    def __init__(self, terms=None):
        self.terms = {}
        for key, c in (terms or {}).items():
            if c != 0:
                self.terms[key] = self.terms.get(key, 0) + complex(c)

    @classmethod
    def z_power(cls, coeffs) -> "ZPoly":
        """``sum_n coeffs[n] z^n``."""
        return cls({(n, 0): c for n, c in enumerate(coeffs)})

    def __add__(self, other):
        if not isinstance(other, ZPoly):
            other = ZPoly({(0, 0): other})
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, 0) + c
        return ZPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return ZPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, ZPoly):
            return ZPoly({k: c * other for k, c in self.terms.items()})
        out = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                key = (a1 + a2, b1 + b2)
                out[key] = out.get(key, 0) + c1 * c2
        return ZPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = ZPoly({(0, 0): 1})
        for _ in range(n):
            out = out * self
        return out

    def conj(self) -> "ZPoly":
        return ZPoly({(b, a): np.conj(c) for (a, b), c in self.terms.items()})

    def d(self) -> "ZPoly":
        return ZPoly({(a - 1, b): a * c for (a, b), c in self.terms.items() if a > 0})

    def dbar(self) -> "ZPoly":
        return ZPoly({(a, b - 1): b * c for (a, b), c in self.terms.items() if b > 0})

    def compose(self, inner: "ZPoly") -> "ZPoly":
        """``self(inner)`` for a polynomial in ``z`` only."""
        out = ZPoly()
        for (a, b), c in self.terms.items():
            if b:
                raise ValueError("compose expects a holomorphic outer polynomial")
            out = out + c * inner**a
        return out

    def max_abs_coeff(self) -> float:
        return max((abs(c) for c in self.terms.values()), default=0.0)

    def is_zero(self, rtol: float = 1e-13, scale: float = 1.0) -> bool:
        return self.max_abs_coeff() <= rtol * scale

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        zb = np.conj(z)
        out = np.zeros_like(z)
        for (a, b), c in self.terms.items():
            out = out + c * z**a * zb**b
        return out

    @property
    def degree(self) -> int:
        return max((a + b for a, b in self.terms), default=0)

    def trace_modes(self) -> dict:
        """Fourier coefficients of the restriction to ``|z| = 1``."""
        out = {}
        for (a, b), c in self.terms.items():
            out[a - b] = out.get(a - b, 0) + c
        return out


def apply_L(params: CanonicalParams, f: ZPoly) -> ZPoly:
    """``d dbar f + |T| d^2 (alpha0 f + beta0 conj f)`` in exact polynomial form."""
    T0f = params.alpha0 * f + params.beta0 * f.conj()
    return f.dbar().d() + params.t_norm * T0f.d().d()


class Family(enum.Enum):
    LAME = "LAME"
    SKEW = "SKEW"


class ExactSolutionError(ValueError):
    pass


@dataclass(frozen=True)
class ExactSolutionSpec:
    family: Family
    poly_coeffs: tuple
    params: CanonicalParams

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        object.__setattr__(self, "poly_coeffs", tuple(complex(c) for c in self.poly_coeffs))
        if self.family is Family.LAME and self.params.tau != 0.0:
            raise ExactSolutionError("LAME family requires tau = 0")
        if self.family is Family.SKEW and not (self.params.sigma == 0.0 and self.params.tau > 0.0):
            raise ExactSolutionError("SKEW family requires sigma = 0 and tau > 0")

    def polynomial(self) -> ZPoly:
        gen = ZPoly.z_power(self.poly_coeffs)
        if self.family is Family.LAME:
            sigma = self.params.sigma
            zbar = ZPoly({(0, 1): 1})
            return gen + gen.conj() - sigma * zbar * gen.d()
        tau = self.params.tau
        inner = ZPoly({(0, 1): 1, (1, 0): -1.0 / tau})
        return gen.compose(inner)


def exact_solution(spec: ExactSolutionSpec, grid: PolarGrid):
    """Return ``(field, trace)`` for the family member, after checking ``L f == 0``."""
    f = spec.polynomial()
    residual = apply_L(spec.params, f)
    if not residual.is_zero(scale=max(1.0, f.max_abs_coeff())):
        raise ExactSolutionError(
            f"exact solution check failed: residual coefficient {residual.max_abs_coeff():.3g}"
        )
    modes = f.trace_modes()
    K = max(abs(k) for k in modes) if modes else 0
    trace = BoundaryFunction.from_dict(modes, max_mode=K)
    return DiskField.from_function(grid, f), trace
