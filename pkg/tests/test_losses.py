import math

import numpy as np
import pytest

from orthoplex.losses import (
    ce_gradient,
    ce_loss,
    ce_loss_arrays,
    ce_selfdual_closed,
    check_tau,
    f_curvature,
    f_d1,
    f_d2,
    f_eval,
    hardmax_loss,
    l_tau_c,
    selfdual_closed_curve
)
from orthoplex.optimizer import random_init
from orthoplex.oracles import fd_derivative, fd_gradient
from orthoplex.types.config import FeatureSet
from orthoplex.types.loss import LossParams
from orthoplex.types.exceptions import (
    OrthoplexArgumentError,
    OrthoplexDomainError
)


def square_loss(tau):
    beta = 1.0 / tau
    return math.log(math.exp(beta) + math.exp(-beta) + 2.0) - beta


@pytest.mark.parametrize("tau", [0.1, 0.5, 1.0, 4.0])
def test_square_loss(square_selfdual, tau):
    """
    Does the square with features on the weights give the hand-computed loss?
    """
    assert ce_loss(square_selfdual, tau) == pytest.approx(square_loss(tau), abs=1e-12)
    assert ce_selfdual_closed((1, 1), 4, tau) == pytest.approx(square_loss(tau), abs=1e-12)


@pytest.mark.parametrize("tau", [0.05, 0.2, 1.0, 3.0])
def test_closed_form_matches_direct(low_code, high_code, tau):
    for code, parts in ((low_code, (3, 1)), (high_code, (2, 2))):
        direct = ce_loss(FeatureSet.selfdual(code, m=2), tau)
        assert ce_selfdual_closed(parts, 6, tau) == pytest.approx(direct, abs=1e-10)


def test_closed_form_curve():
    taus = [0.2, 0.5, 2.0]
    curve = selfdual_closed_curve((3, 1), 6, taus)
    assert curve.shape == (3,)
    for tau, value in zip(taus, curve):
        assert value == pytest.approx(ce_selfdual_closed((3, 1), 6, tau), abs=1e-15)


def test_closed_form_inconsistent_n():
    with pytest.raises(OrthoplexArgumentError):
        ce_selfdual_closed((3, 1), 7, 0.5)


def test_closed_form_small_tau_is_finite():
    """ The closed form stays finite where exp(1/tau) overflows """
    assert math.isfinite(ce_selfdual_closed((3, 1, 1, 1), 10, 1e-4))


@pytest.mark.parametrize("tau", [0.0, -1.0, float("inf"), float("nan")])
def test_invalid_temperature(tau):
    with pytest.raises(OrthoplexArgumentError):
        check_tau(tau)


def test_temperature_below_minimum(square_selfdual):
    with pytest.raises(OrthoplexArgumentError):
        ce_loss(square_selfdual, 1e-4)


def test_loss_rotation_invariant():
    """
    Is the loss unchanged by a common rotation of weights and features?
    """
    wh = random_init(3, 5, 2, seed=9)
    rotation, _ = np.linalg.qr(np.random.default_rng(1).standard_normal((3, 3)))
    rotated = ce_loss_arrays(wh.weights.vectors @ rotation, wh.features @ rotation, 0.4)
    assert rotated == pytest.approx(ce_loss(wh, 0.4), abs=1e-12)


def test_gradient_matches_finite_differences():
    wh = random_init(2, 4, 2, seed=5)
    analytic = ce_gradient(wh, 0.5)
    numeric = fd_gradient(lambda w, h: ce_loss_arrays(w, h, 0.5), wh)
    assert np.allclose(analytic.d_weights, numeric.d_weights, atol=1e-7)
    assert np.allclose(analytic.d_features, numeric.d_features, atol=1e-7)


def test_gradient_is_tangent():
    wh = random_init(3, 5, 1, seed=2)
    r_weights, r_features = ce_gradient(wh, 0.3).riemannian
    assert np.allclose(np.sum(r_weights * wh.weights.vectors, axis=-1), 0.0, atol=1e-12)
    assert np.allclose(np.sum(r_features * wh.features, axis=-1), 0.0, atol=1e-12)


@pytest.mark.parametrize("tau", [0.1, 0.5, 1.0])
def test_codes_are_critical_points(low_code, high_code, tau):
    for code in (low_code, high_code):
        assert ce_gradient(FeatureSet.selfdual(code), tau).riemannian_norm < 1e-6


@pytest.mark.parametrize(
    ("convention", "expected"), [
        ("negated", -1.0),
        ("printed", 2.0)
    ]
)
def test_hardmax_conventions(square_selfdual, convention, expected):
    """
    Does each sign convention give its value on the self-dual square?
    """
    assert hardmax_loss(square_selfdual, convention=convention) == pytest.approx(expected)


def test_hardmax_unknown_convention(square_selfdual):
    with pytest.raises(OrthoplexArgumentError):
        hardmax_loss(square_selfdual, convention="absolute")


def test_l_tau_c(square):
    assert l_tau_c(square, 1.0) == pytest.approx(4.0 * math.log(3.0 + math.exp(-1.0)), abs=1e-12)
    assert l_tau_c(square, 0.5, c=2.0) == pytest.approx(4.0 * math.log(4.0 + math.exp(-2.0)), abs=1e-12)


def test_l_tau_c_with_params(square):
    assert l_tau_c(square, LossParams(0.5, c=2.0)) == pytest.approx(l_tau_c(square, 0.5, c=2.0))
    assert ce_loss(FeatureSet.selfdual(square), LossParams(0.5)) == pytest.approx(square_loss(0.5))


def test_l_tau_c_invalid_constant(square):
    with pytest.raises(OrthoplexArgumentError):
        l_tau_c(square, 1.0, c=0.0)


def test_f_value():
    assert f_eval(10, 0.5, 1.0) == pytest.approx(2.0 * math.log(8.0 + math.exp(2.0) + math.exp(-2.0)))
    assert f_eval(10, 0.5, 9.0) == pytest.approx(10.0 * math.log(math.exp(2.0) + 9.0 * math.exp(-2.0 / 9.0)))


def test_f_accepts_arrays():
    xs = np.linspace(1.0, 9.0, 5)
    values = f_eval(10, 0.5, xs)
    assert isinstance(values, np.ndarray) and values.shape == (5,)
    assert values[2] == pytest.approx(f_eval(10, 0.5, 5.0))


@pytest.mark.parametrize("x", [1.5, 3.0, 7.25])
@pytest.mark.parametrize("tau", [0.3, 0.5, 2.0])
def test_f_derivatives(tau, x):
    """
    Do the analytic derivatives of f agree with central differences?
    """
    d1 = fd_derivative(lambda t: f_eval(10, tau, t), x)
    d2 = fd_derivative(lambda t: f_d1(10, tau, t), x, h=1e-4)
    assert f_d1(10, tau, x) == pytest.approx(d1, rel=1e-6, abs=1e-6)
    assert f_d2(10, tau, x) == pytest.approx(d2, rel=1e-5, abs=1e-6)
    assert np.sign(f_curvature(10, tau, x)) == np.sign(f_d2(10, tau, x))


@pytest.mark.parametrize("x", [0.5, 9.5])
def test_f_outside_domain(x):
    with pytest.raises(OrthoplexDomainError):
        f_eval(10, 0.5, x)


def test_f_needs_three_classes():
    with pytest.raises(OrthoplexArgumentError):
        f_eval(2, 0.5, 1.0)
