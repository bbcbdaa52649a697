"""
Loss kernels: cross-entropy at temperature ``tau``, the hardmax loss,
the batch loss ``L_{tau,c}``, the closed form of the self-dual
cross-entropy over orthogonal simplex blocks and the function ``f``
whose curvature decides which block sizes are optimal.
"""
import logging
import math

import numpy as np
import scipy.special

from orthoplex.types.config import FeatureSet, SphericalConfig
from orthoplex.types.dimtuple import DimensionTuple
from orthoplex.types.exceptions import (
    OrthoplexArgumentError,
    OrthoplexDomainError
)
from orthoplex.types.loss import GradientPair, LossParams

log = logging.getLogger(__name__)

MIN_TAU = 1e-3
HARDMAX_CONVENTIONS = ("negated", "printed")
DOMAIN_TOL = 1e-12


def check_tau(tau, minimum=0.0):
    """ Validated float temperature, unwrapping a :class:`LossParams` """
    tau = float(tau.tau if isinstance(tau, LossParams) else tau)
    if not (math.isfinite(tau) and tau > 0):
        raise OrthoplexArgumentError(f"Temperature must be positive and finite, received tau={tau!r}")
    if tau < minimum:
        raise OrthoplexArgumentError(f"Temperature {tau!r} is below the stable minimum {minimum}")
    return tau


def _scalar(value):
    return float(value) if np.ndim(value) == 0 else value


def ce_loss_arrays(weights, features, tau):
    """
    Mean over all ``(k, i)`` of ``-log softmax(<w_j, h_ki>/tau)[k]``,
    for ``weights`` of shape ``n x d`` and ``features`` of shape ``n x m x d``.
    """
    logits = np.einsum("kid,jd->kij", features, weights) / tau
    correct = np.einsum("kid,kd->ki", features, weights) / tau
    return float(np.mean(scipy.special.logsumexp(logits, axis=-1) - correct))


def ce_loss(wh: FeatureSet, tau) -> float:
    tau = check_tau(tau, minimum=MIN_TAU)
    return ce_loss_arrays(wh.weights.vectors, wh.features, tau)


def ce_gradient_arrays(weights, features, tau):
    """
    Euclidean gradients of :func:`ce_loss_arrays` and their projections
    onto the tangent spaces of the unit spheres at each row.

    Returns:
        d_weights, d_features, riemannian_weights, riemannian_features
    """
    n, m, _ = features.shape
    scale = 1.0 / (n * m * tau)
    logits = np.einsum("kid,jd->kij", features, weights) / tau
    probs = scipy.special.softmax(logits, axis=-1)

    d_features = scale * (np.einsum("kij,jd->kid", probs, weights) - weights[:, np.newaxis, :])
    d_weights = scale * (np.einsum("kij,kid->jd", probs, features) - features.sum(axis=1))

    r_weights = d_weights - np.sum(d_weights * weights, axis=-1, keepdims=True) * weights
    r_features = d_features - np.sum(d_features * features, axis=-1, keepdims=True) * features
    return d_weights, d_features, r_weights, r_features


def ce_gradient(wh: FeatureSet, tau) -> GradientPair:
    tau = check_tau(tau, minimum=MIN_TAU)
    weights, features = wh.weights.vectors, wh.features
    return GradientPair(*ce_gradient_arrays(weights, features, tau), weights=weights, features=features)


def ce_selfdual_closed(parts, n, tau) -> float:
    """
    Cross-entropy of the self-dual code built from mutually orthogonal
    regular simplices of dimensions ``parts``, in closed form.

    Args:
        parts (DimensionTuple | Sequence[int]): Block dimensions summing to ``d``
        n (int): Number of classes, must equal ``d + len(parts)``
        tau (float): Temperature

    Returns:
        float: ``(1/n) sum (d_i+1) log(n-d_i-1 + e^b + d_i e^{-b/d_i}) - b``
        with ``b = 1/tau``
    """
    return float(selfdual_closed_curve(parts, n, [check_tau(tau)])[0])


def selfdual_closed_curve(parts, n, taus):
    """ :func:`ce_selfdual_closed` evaluated over an array of temperatures """
    dims = parts if isinstance(parts, DimensionTuple) else DimensionTuple(parts)
    n = int(n)
    if n != dims.d + dims.l:
        raise OrthoplexArgumentError(f"Tuple {dims.as_string()} sums to d={dims.d} with l={dims.l}, which requires n={dims.d + dims.l}, received n={n}")
    beta = 1.0 / np.asarray(taus, dtype=float)[:, np.newaxis]

    d_i = np.asarray(dims.parts, dtype=float)[np.newaxis, :]
    # The e^b factor inside each logarithm cancels against the trailing -b
    scaled = (n - d_i - 1.0) * np.exp(-beta) + 1.0 + d_i * np.exp(-beta / d_i - beta)
    return np.sum((d_i + 1.0) * np.log(scaled), axis=1) / n


def hardmax_loss(wh: FeatureSet, convention="negated") -> float:
    """
    ``negated`` evaluates ``max <w_k' - w_k, h_ki>`` over ``k' != k``,
    ``printed`` its negation inside the max, ``max <w_k - w_k', h_ki>``.
    """
    if convention not in HARDMAX_CONVENTIONS:
        raise OrthoplexArgumentError(f"Unknown hardmax convention {convention!r}, expected one of {HARDMAX_CONVENTIONS}")
    if wh.n < 2:
        raise OrthoplexArgumentError(f"The hardmax loss needs at least two classes, received n={wh.n}")

    weights, features = wh.weights.vectors, wh.features
    scores = np.einsum("kid,jd->kij", features, weights)
    correct = np.einsum("kid,kd->ki", features, weights)[..., np.newaxis]
    margins = scores - correct if convention == "negated" else correct - scores

    other = ~np.eye(wh.n, dtype=bool)[:, np.newaxis, :]
    return float(np.max(margins, where=np.broadcast_to(other, margins.shape), initial=-np.inf))


def l_tau_c(config: SphericalConfig, tau, c=1.0) -> float:
    """
    ``sum_k log(c + sum_{j != k} exp(<x_j, x_k>/tau))``. When ``tau`` is a
    :class:`LossParams` its constant replaces ``c``.
    """
    if isinstance(tau, LossParams):
        c = tau.c
    tau = check_tau(tau)
    c = float(c)
    if not (math.isfinite(c) and c > 0):
        raise OrthoplexArgumentError(f"Constant c must be positive and finite, received c={c!r}")
    if config.n < 2:
        raise OrthoplexArgumentError(f"L_tau_c needs at least two points, received n={config.n}")

    logits = config.gram() / tau
    np.fill_diagonal(logits, math.log(c))
    return float(np.sum(scipy.special.logsumexp(logits, axis=1)))


def _check_f_domain(n, tau, x):
    n = int(n)
    if n < 3:
        raise OrthoplexArgumentError(f"f is defined for n >= 3, received n={n}")
    beta = 1.0 / check_tau(tau)
    x = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(x)) or np.any(x < 1.0 - DOMAIN_TOL) or np.any(x > n - 1 + DOMAIN_TOL):
        raise OrthoplexDomainError(f"x must lie in [1, {n - 1}], received {x.tolist()}")
    return n, beta, x


def _g_terms(n, beta, x):
    """
    Returns ``log g``, ``g' / g``, ``g'`` and ``g''`` where
    ``g(x) = n - x - 1 + e^b + x e^{-b/x}``.
    """
    u = beta / x
    scaled = (n - x - 1.0) * np.exp(-beta) + 1.0 + x * np.exp(-u - beta)
    log_g = beta + np.log(scaled)
    g1 = -1.0 + (1.0 + u) * np.exp(-u)
    g2 = u * u * np.exp(-u) / x
    g1_over_g = g1 * np.exp(-beta) / scaled
    return log_g, g1_over_g, g1, g2


def f_eval(n, tau, x):
    """ ``f(x) = (x+1) log(n - x - 1 + e^{1/tau} + x e^{-1/(tau x)})`` on ``[1, n-1]`` """
    n, beta, x = _check_f_domain(n, tau, x)
    log_g, _, _, _ = _g_terms(n, beta, x)
    return _scalar((x + 1.0) * log_g)


def f_d1(n, tau, x):
    n, beta, x = _check_f_domain(n, tau, x)
    log_g, g1_over_g, _, _ = _g_terms(n, beta, x)
    return _scalar(log_g + (x + 1.0) * g1_over_g)


def f_curvature(n, tau, x):
    """
    ``Q = (x+1) g'' + 2 g' - (x+1) g'^2 / g``, so that ``f'' = Q / g``.
    Its sign is that of ``f''`` and it stays finite where ``g`` overflows.
    """
    n, beta, x = _check_f_domain(n, tau, x)
    _, g1_over_g, g1, g2 = _g_terms(n, beta, x)
    return _scalar((x + 1.0) * g2 + 2.0 * g1 - (x + 1.0) * g1 * g1_over_g)


def f_d2(n, tau, x):
    n, beta, x = _check_f_domain(n, tau, x)
    log_g, g1_over_g, g1, g2 = _g_terms(n, beta, x)
    curvature = (x + 1.0) * g2 + 2.0 * g1 - (x + 1.0) * g1 * g1_over_g
    return _scalar(curvature * np.exp(-log_g))
