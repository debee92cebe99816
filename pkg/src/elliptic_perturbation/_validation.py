"""Input checks shared by the estimator and the command line."""
from __future__ import annotations

from collections.abc import Mapping

import numpy as np
from sklearn.utils.validation import check_array

from .operators import BoundaryFunction


def check_disk_points(X, *, closed: bool = True) -> np.ndarray:
    """Complex points from an ``(n, 2)`` real array or a 1-D complex array.

    Points must lie in the closed unit disk (open if ``closed=False``).
    """
    arr = np.asarray(X)
    if np.iscomplexobj(arr):
        z = np.ravel(arr).astype(complex)
        if not np.all(np.isfinite(z)):
            raise ValueError("points contain NaN or infinity")
    else:
        xy = check_array(X, ensure_2d=True, dtype=np.float64)
        if xy.shape[1] != 2:
            raise ValueError(f"expected points of shape (n, 2), got {xy.shape}")
        z = xy[:, 0] + 1j * xy[:, 1]
    rad = np.abs(z)
    bad = rad > 1.0 + 1e-12 if closed else rad >= 1.0
    if np.any(bad):
        raise ValueError(f"points must lie in the unit disk; max |z| = {rad.max():.6g}")
    return z


def check_boundary(H, max_mode: int | None = None) -> BoundaryFunction:
    """Coerce ``H`` to a BoundaryFunction and check it fits the band.

    Accepts a BoundaryFunction, a mapping ``{k: h_k}``, or a 1-D array of
    equispaced boundary samples on ``[0, 2 pi)``.
    """
    if isinstance(H, BoundaryFunction):
        h = H
    elif isinstance(H, Mapping):
        h = BoundaryFunction.from_dict({int(k): complex(v) for k, v in H.items()})
    else:
        values = np.asarray(H)
        if values.ndim != 1 or values.size < 3:
            raise ValueError("boundary samples must be a 1-D array with at least 3 entries")
        if not np.all(np.isfinite(values)):
            raise ValueError("boundary samples contain NaN or infinity")
        K = (values.size - 1) // 2 if max_mode is None else min(max_mode, (values.size - 1) // 2)
        h = BoundaryFunction.from_samples(values, K)
    if max_mode is not None and h.max_mode > max_mode:
        raise ValueError(f"boundary datum has modes up to {h.max_mode}, band limit is {max_mode}")
    return h
