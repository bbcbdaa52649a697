import math

import numpy as np

from .base import OrthoplexType

TANGENT_TOL = 1e-10


class LossParams(OrthoplexType):
    """
    Temperature ``tau`` (with ``beta = 1/tau``) and the additive
    constant ``c`` of the batch loss.
    """
    def __init__(self, tau, c=1.0):
        tau = float(tau)
        self.data = {
            "tau": tau,
            "c": float(c),
            "beta": 1.0 / tau if tau > 0 and math.isfinite(tau) else math.nan
        }

    @property
    def tau(self):
        return self.data["tau"]

    @property
    def c(self):
        return self.data["c"]

    @property
    def beta(self):
        return self.data["beta"]


    """ Validation rules """

    def rule_tau_positive(self):
        assert self.tau > 0 and math.isfinite(self.tau), f"Temperature must be positive and finite, received {self.tau!r}"

    def rule_c_positive(self):
        assert self.c > 0 and math.isfinite(self.c), f"Constant c must be positive and finite, received {self.c!r}"


class GradientPair(OrthoplexType):
    """
    Euclidean gradients with respect to weights (n x d) and features
    (n x m x d), and their projections onto the sphere tangent spaces.
    """
    def __init__(self, d_weights, d_features, riemannian_weights, riemannian_features,
                 weights=None, features=None):
        self.base_weights = weights
        self.base_features = features
        self.data = {
            "d_weights": np.asarray(d_weights, dtype=float),
            "d_features": np.asarray(d_features, dtype=float),
            "riemannian_weights": np.asarray(riemannian_weights, dtype=float),
            "riemannian_features": np.asarray(riemannian_features, dtype=float)
        }

    @property
    def d_weights(self):
        return self.data["d_weights"]

    @property
    def d_features(self):
        return self.data["d_features"]

    @property
    def riemannian(self):
        return self.data["riemannian_weights"], self.data["riemannian_features"]

    @property
    def riemannian_norm(self):
        rw, rf = self.riemannian
        return float(np.sqrt(np.sum(rw * rw) + np.sum(rf * rf)))


    """ Validation rules """

    def rule_shapes_agree(self):
        assert self.d_weights.shape == self.data["riemannian_weights"].shape, "Weight gradient shapes disagree"
        assert self.d_features.shape == self.data["riemannian_features"].shape, "Feature gradient shapes disagree"

    def rule_riemannian_is_tangent(self):
        if self.base_weights is None or self.base_features is None:
            return
        rw, rf = self.riemannian
        radial_w = np.max(np.abs(np.sum(rw * self.base_weights, axis=-1)), initial=0.0)
        radial_f = np.max(np.abs(np.sum(rf * self.base_features, axis=-1)), initial=0.0)
        assert max(radial_w, radial_f) <= TANGENT_TOL, "Riemannian gradient has a radial component"


class LossReport(OrthoplexType):
    def __init__(self, tau, loss, convention=None, **extra):
        self.data = {"tau": float(tau), "loss": float(loss), "convention": convention}
        self.data.update(extra)

    @property
    def tau(self):
        return self.data["tau"]

    @property
    def loss(self):
        return self.data["loss"]

    @property
    def convention(self):
        return self.data["convention"]
