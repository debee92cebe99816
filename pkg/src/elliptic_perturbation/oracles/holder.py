"""Lacunary boundary data with a prescribed Holder exponent."""
from __future__ import annotations

import math

import numpy as np

from ..operators import BoundaryFunction


def holder_boundary(alpha: float, modes: int, seed: int = 0) -> BoundaryFunction:
    """``H(theta) = sum_j 2^(-alpha j) cos(2^j theta + phi_j)`` for ``2^j <= modes``.

    A Weierstrass-type series: it is ``C^alpha`` and no better.  The phases
    ``phi_j`` are drawn from ``numpy.random.default_rng(seed)``; magnitudes
    do not depend on the seed.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha!r}")
    if modes < 1:
        raise ValueError(f"modes must be >= 1, got {modes!r}")
    rng = np.random.default_rng(seed)
    n_terms = int(math.floor(math.log2(modes))) + 1
    phases = rng.uniform(0.0, 2.0 * np.pi, size=n_terms)
    c = np.zeros(2 * modes + 1, dtype=complex)
    for j in range(n_terms):
        k = 2**j
        a = 0.5 * 2.0 ** (-alpha * j) * np.exp(1j * phases[j])
        c[modes + k] = a
        c[modes - k] = np.conj(a)
    h = BoundaryFunction(c)
    return BoundaryFunction(c, holder_exponent_estimate=h.decay_exponent())
