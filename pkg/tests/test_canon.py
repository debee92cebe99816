import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from elliptic_perturbation import (AffineConjOp, DegenerateOperatorError, StrongEllipticityError, affine_apply,
                                   canonical_params)

unit = st.floats(min_value=0.0, max_value=0.999, allow_nan=False)


@pytest.mark.parametrize("tau,sigma,t,a0,b0", [
    (0.0, 0.0, 0.0, 1.0, 0.0),
    (0.5, 0.5, 0.8, 0.5, 0.5),
    (0.0, 0.5, 0.5, 0.0, 1.0),
])
def test_canonical_examples(tau, sigma, t, a0, b0):
    p = canonical_params(tau, sigma)
    assert p.t_norm == pytest.approx(t, abs=1e-15)
    assert p.alpha0 == pytest.approx(a0, abs=1e-15)
    assert p.beta0 == pytest.approx(b0, abs=1e-15)


def test_skew_params():
    p = canonical_params(0.5, 0.0)
    assert (p.t_norm, p.alpha0, p.beta0) == (0.5, 1.0, 0.0)


@pytest.mark.parametrize("tau,sigma", [(1.0, 0.0), (1.2, 0.1), (0.1, 1.0), (-0.1, 0.2), (0.2, -1e-9)])
def test_rejects_out_of_range(tau, sigma):
    with pytest.raises(StrongEllipticityError, match="strong ellipticity"):
        canonical_params(tau, sigma)


@given(unit, unit)
def test_param_invariants(tau, sigma):
    p = canonical_params(tau, sigma)
    assert 0.0 <= p.t_norm < 1.0
    assert (p.t_norm == 0.0) == (tau == 0.0 and sigma == 0.0)
    if tau + sigma > 0:
        assert abs(p.alpha0 + p.beta0 - 1.0) <= 1e-14
        assert p.alpha0 >= 0.0 and p.beta0 >= 0.0
        d = (tau + sigma) * (1 - sigma * tau)
        assert p.alpha0 == pytest.approx(tau * (1 - sigma**2) / d, rel=1e-12, abs=1e-15)
        assert p.beta0 == pytest.approx(sigma * (1 - tau**2) / d, rel=1e-12, abs=1e-15)


def test_affine_examples():
    assert affine_apply(AffineConjOp(1, 0), 3 + 4j) == 3 + 4j
    assert affine_apply(AffineConjOp(0, 1), 1 + 2j) == 1 - 2j
    op = AffineConjOp(2, 1)
    inv = op.inverse()
    assert inv.alpha == pytest.approx(2 / 3) and inv.beta == pytest.approx(-1 / 3)
    assert affine_apply(inv, affine_apply(op, 1j)) == pytest.approx(1j, abs=1e-15)


def test_degenerate_inverse():
    with pytest.raises(DegenerateOperatorError):
        AffineConjOp(1 + 0j, 1j).inverse()


def test_round_trip_many(rng):
    for _ in range(1000):
        a, b = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        if abs(abs(a) - abs(b)) < 1e-3:
            continue
        op = AffineConjOp(a, b)
        w = complex(rng.standard_normal(), rng.standard_normal())
        assert abs(affine_apply(op.inverse(), affine_apply(op, w)) - w) <= 1e-12 * max(1, abs(w))


@settings(max_examples=50)
@given(st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False),
       st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False))
def test_norm_attained(a, b):
    op = AffineConjOp(a, b)
    w = np.exp(1j * np.linspace(0, 2 * np.pi, 200001))
    assert np.max(np.abs(op(w))) == pytest.approx(op.norm, abs=1e-10 + 1e-9 * op.norm)
    assert op.norm == pytest.approx(abs(a) + abs(b))


def test_T0_is_identity_at_laplace():
    p = canonical_params(0, 0)
    assert p.is_laplace
    assert p.T0(2 - 3j) == 2 - 3j
    assert math.isclose(p.T.norm, 0.0)
