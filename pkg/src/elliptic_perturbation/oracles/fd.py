"""Second-order finite differences for the transplanted disk equation.

Unknowns are ``F = u + iv`` at lattice nodes inside the unit disk.  At nodes
whose 3x3 neighbourhood lies inside the disk we discretize (times 4)

    Lap F + |T| Omega (alpha0 D2 F + beta0 D2 conj F)
          + 2 |T| dOmega (alpha0 D1 F + beta0 D1 conj F) = 0,

with ``D2 = d_xx - 2i d_xy - d_yy`` and ``D1 = d_x - i d_y``.  Nodes next to
the circle take the value interpolated between the boundary datum and the
lattice neighbour(s) inward along the lattice direction that best matches the
outward normal: linear by default, optionally quadratic through two inward
neighbours.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from ..canon import CanonicalParams
from ..conformal import ConformalMapSeries
from ..operators import BoundaryFunction


class SingularSystemError(RuntimeError):
    """The discrete system could not be solved (loss of ellipticity)."""


@dataclass
class CartesianField:
    n: int
    x: np.ndarray
    values: np.ndarray
    inside: np.ndarray

    @property
    def h(self) -> float:
        return float(self.x[1] - self.x[0])

    @property
    def z(self) -> np.ndarray:
        X, Y = np.meshgrid(self.x, self.x, indexing="ij")
        return X + 1j * Y

    def to_csv(self, path) -> None:
        X, Y = np.meshgrid(self.x, self.x, indexing="ij")
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["i", "j", "x", "y", "re", "im", "inside"])
            for i in range(self.n):
                for j in range(self.n):
                    v = self.values[i, j]
                    writer.writerow([i, j, repr(float(X[i, j])), repr(float(Y[i, j])),
                                     repr(float(v.real)), repr(float(v.imag)), int(self.inside[i, j])])


_DIRS = [(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (1, -1), (-1, 1), (-1, -1)]


def fd_solve(params: CanonicalParams, omega: ConformalMapSeries | None, H: BoundaryFunction,
             n: int, boundary_order: int = 1) -> CartesianField:
    """Solve ``M F = 0`` on the ``n x n`` lattice over ``[-1, 1]^2``.

    ``boundary_order`` selects linear (1) or quadratic (2) interpolation for
    the nodes adjacent to the circle.
    """
    if boundary_order not in (1, 2):
        raise ValueError("boundary_order must be 1 or 2")
    if n < 32:
        raise ValueError(f"fd_solve needs n >= 32, got {n}")
    omega = omega or ConformalMapSeries.identity()
    omega.check()
    x = np.linspace(-1.0, 1.0, n)
    h = x[1] - x[0]
    X, Y = np.meshgrid(x, x, indexing="ij")
    Z = X + 1j * Y
    inside = np.abs(Z) < 1.0

    pad = np.zeros((n + 2, n + 2), dtype=bool)
    pad[1:-1, 1:-1] = inside
    interior = inside.copy()
    # interior: the full 3x3 neighbourhood lies in the open disk
    for di in (-1, 0, 1):
        for dj in (-1, 0, 1):
            interior &= pad[1 + di : n + 1 + di, 1 + dj : n + 1 + dj]
    near = inside & ~interior

    index = -np.ones((n, n), dtype=int)
    index[inside] = np.arange(inside.sum())
    N = int(inside.sum())

    rows, cols, a_vals, b_vals = [], [], [], []
    rhs = np.zeros(N, dtype=complex)

    def add(r, c, a, b=0.0):
        rows.append(r)
        cols.append(c)
        a_vals.append(a)
        b_vals.append(b)

    t = params.t_norm
    a0, b0 = params.alpha0, params.beta0
    I, J = np.nonzero(interior)
    Om = omega.ratio(Z[I, J])
    dOm = omega.ratio_d(Z[I, J])
    h2 = h * h
    for m in range(I.size):
        i, j = I[m], J[m]
        p = index[i, j]
        c2 = t * Om[m]
        c1 = 2.0 * t * dOm[m]
        # D2 = d_xx - 2i d_xy - d_yy ; D1 = d_x - i d_y
        stencil = {
            (0, 0): (-4.0 / h2, 0.0),
            (1, 0): (1.0 / h2, 1.0 / h2),
            (-1, 0): (1.0 / h2, 1.0 / h2),
            (0, 1): (1.0 / h2, -1.0 / h2),
            (0, -1): (1.0 / h2, -1.0 / h2),
        }
        d1 = {(1, 0): 1.0 / (2 * h), (-1, 0): -1.0 / (2 * h), (0, 1): -1j / (2 * h), (0, -1): 1j / (2 * h)}
        mixed = -2j / (4 * h2)
        cross = {(1, 1): mixed, (-1, -1): mixed, (1, -1): -mixed, (-1, 1): -mixed}
        coef_a = {}
        coef_b = {}
        for off, (lap, d2) in stencil.items():
            coef_a[off] = coef_a.get(off, 0) + lap + c2 * a0 * d2
            coef_b[off] = coef_b.get(off, 0) + c2 * b0 * d2
        # the centre of D2 cancels: d_xx and d_yy centres -2/h^2 and +2/h^2
        for off, v in cross.items():
            coef_a[off] = coef_a.get(off, 0) + c2 * a0 * v
            coef_b[off] = coef_b.get(off, 0) + c2 * b0 * v
        for off, v in d1.items():
            coef_a[off] = coef_a.get(off, 0) + c1 * a0 * v
            coef_b[off] = coef_b.get(off, 0) + c1 * b0 * v
        for (di, dj), av in coef_a.items():
            add(p, index[i + di, j + dj], av, coef_b.get((di, dj), 0.0))

    I, J = np.nonzero(near)
    for m in range(I.size):
        i, j = I[m], J[m]
        p = index[i, j]
        zp = Z[i, j]
        rho = abs(zp)
        normal = zp / rho if rho > 0 else 1.0
        best = None
        for di, dj in _DIRS:
            d = complex(di, dj) / abs(complex(di, dj))
            cosang = (np.conj(normal) * d).real
            qi, qj = i - di, j - dj
            if 0 <= qi < n and 0 <= qj < n and inside[qi, qj] and (best is None or cosang > best[0]):
                best = (cosang, di, dj, d)
        _, di, dj, d = best
        step = h * abs(complex(di, dj))
        b = (np.conj(zp) * d).real
        delta = -b + np.sqrt(b * b + 1.0 - rho**2)
        theta = np.angle(zp + delta * d)
        hval = H(np.array([theta]))[0]
        add(p, p, 1.0)
        q2i, q2j = i - 2 * di, j - 2 * dj
        if boundary_order == 2 and 0 <= q2i < n and 0 <= q2j < n and inside[q2i, q2j]:
            # quadratic through q2 (-2 step), q1 (-step), boundary (+delta), evaluated at 0
            add(p, index[i - di, j - dj], -2.0 * delta / (step + delta))
            add(p, index[q2i, q2j], delta / (2.0 * step + delta))
            rhs[p] = 2.0 * step**2 / ((step + delta) * (2.0 * step + delta)) * hval
        else:
            add(p, index[i - di, j - dj], -delta / (step + delta))
            rhs[p] = step / (step + delta) * hval

    A = sp.csr_matrix((np.array(a_vals, dtype=complex), (rows, cols)), shape=(N, N))
    B = sp.csr_matrix((np.array(b_vals, dtype=complex), (rows, cols)), shape=(N, N))
    # real form of A F + B conj(F) = rhs
    Ar, Ai, Br, Bi = A.real, A.imag, B.real, B.imag
    big = sp.bmat([[Ar + Br, -Ai + Bi], [Ai + Bi, Ar - Br]], format="csc")
    sol = spla.spsolve(big, np.concatenate([rhs.real, rhs.imag]))
    if not np.all(np.isfinite(sol)):
        raise SingularSystemError("finite-difference system is singular")
    values = np.full((n, n), np.nan + 0j)
    values[inside] = sol[:N] + 1j * sol[N:]
    return CartesianField(n, x, values, inside)
