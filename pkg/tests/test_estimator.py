import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from elliptic_perturbation import BoundaryFunction, PerturbationSeriesSolver, StrongEllipticityError


def test_get_set_params_and_clone():
    est = PerturbationSeriesSolver(tau=0.2, sigma=0.1, max_mode=8, radial_count=12)
    params = est.get_params()
    assert params["tau"] == 0.2 and params["radial_count"] == 12
    est.set_params(sigma=0.3)
    c = clone(est)
    assert c.get_params()["sigma"] == 0.3
    assert not hasattr(c, "solution_")


def test_fit_predict_lame():
    est = PerturbationSeriesSolver(tau=0.0, sigma=0.5, max_mode=8, radial_count=16)
    est.fit({2: 1, -2: 1, 0: -1})
    assert est.stop_reason_ == "term_vanished"
    X = np.array([[0.3, 0.4], [0.0, 0.0], [-0.5, 0.1]])
    z = X[:, 0] + 1j * X[:, 1]
    assert np.allclose(est.predict(X), z**2 + np.conj(z) ** 2 - np.abs(z) ** 2, atol=1e-10)
    assert np.allclose(est.predict(z), est.predict(X))


def test_fit_from_samples():
    th = 2 * np.pi * np.arange(32) / 32
    est = PerturbationSeriesSolver(max_mode=8, radial_count=12).fit(np.cos(2 * th))
    X = np.array([[0.5, 0.0]])
    assert est.predict(X)[0] == pytest.approx(0.25, abs=1e-12)


def test_fit_with_map():
    est = PerturbationSeriesSolver(tau=0.3, sigma=0.3, map_coeffs=[0, 1, 0.25], max_mode=16, radial_count=24)
    est.fit(BoundaryFunction.from_dict({1: 0.5, -1: 0.5}))
    assert est.stop_reason_ == "tail_converged"
    w, v = est.predict_physical(np.array([[1.0, 0.0]]))
    assert w[0] == pytest.approx(1.25) and v[0] == pytest.approx(1.0, abs=1e-8)


def test_predict_before_fit():
    with pytest.raises(NotFittedError):
        PerturbationSeriesSolver().predict(np.zeros((1, 2)))


@pytest.mark.parametrize("X", [np.zeros((3, 3)), np.array([[1.5, 0.0]]), np.array([[np.nan, 0.0]])])
def test_predict_validation(X):
    est = PerturbationSeriesSolver(max_mode=4, radial_count=8).fit({1: 1})
    with pytest.raises(ValueError):
        est.predict(X)


def test_fit_validation():
    with pytest.raises(StrongEllipticityError):
        PerturbationSeriesSolver(tau=1.0).fit({1: 1})
    with pytest.raises(ValueError, match="band"):
        PerturbationSeriesSolver(max_mode=4, radial_count=8).fit({6: 1})
