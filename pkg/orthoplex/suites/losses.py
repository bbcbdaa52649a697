import math

import numpy as np

from orthoplex.codes import (
    build_entropy_code,
    build_orthoplex_subset,
    build_simplex,
    perturbed,
    regime_pairs
)
from orthoplex.losses import (
    ce_gradient,
    ce_loss,
    ce_loss_arrays,
    ce_selfdual_closed,
    f_d1,
    f_d2,
    f_eval,
    hardmax_loss,
    l_tau_c
)
from orthoplex.optimizer import random_init
from orthoplex.oracles import fd_derivative, fd_gradient
from orthoplex.types.config import FeatureSet

__key__ = "losses"
__suite_name__ = "Loss Kernels"
__version__ = "0.1.0"
__description__ = """
Cross-entropy agrees with its closed form on block codes, the simplex
minimises L_tau_c, and analytic derivatives agree with central
differences.
"""

TAUS = (0.1, 0.3, 1.0, 3.0)
PERTURBATIONS = 200


def _rel_error(a, b, floor=1e-6):
    return abs(a - b) / max(abs(a), abs(b), floor)


def check_square_value():
    square = FeatureSet.selfdual(build_orthoplex_subset(2, 4))
    expected = math.log(2 + math.e + math.exp(-1)) - 1
    assert abs(ce_loss(square, 1.0) - expected) <= 1e-12
    assert abs(ce_selfdual_closed((1, 1), 4, 1.0) - expected) <= 1e-12


def check_closed_form_matches_direct_loss():
    for d, n in regime_pairs(range(2, 7)):
        codes = [build_entropy_code(d, n, kind) for kind in ("low", "high")]
        if n == 2 * d:
            codes.append((build_orthoplex_subset(d, n), (1,) * d))
        for code, parts in codes:
            wh = FeatureSet.selfdual(code)
            for tau in TAUS:
                direct, closed = ce_loss(wh, tau), ce_selfdual_closed(parts, n, tau)
                assert abs(direct - closed) <= 1e-10, f"{parts} at tau={tau}: {direct!r} != {closed!r}"


def check_simplex_minimises_l_tau_c():
    for q in (3, 4, 5):
        simplex = build_simplex(q, q + 1)
        for tau in (0.5, 1.0):
            for c in (0.5, 1.0, 2.0):
                value = l_tau_c(simplex, tau, c)
                expected = q * math.log(c + (q - 1) * math.exp(-1.0 / (tau * (q - 1))))
                assert abs(value - expected) <= 1e-12, f"Simplex ({q}) value {value!r} != {expected!r}"
                for seed in range(PERTURBATIONS):
                    other = l_tau_c(perturbed(simplex, 0.2, seed=seed), tau, c)
                    assert other >= value - 1e-12, f"Perturbation {seed} beats the simplex: {other!r} < {value!r}"


def check_f_derivatives_match_differences():
    n = 10
    for tau in (0.3, 0.45, 0.7, 1.5):
        for x in (1.5, 2.5, 5.0, 8.0):
            d1 = fd_derivative(lambda t: f_eval(n, tau, t), x)
            d2 = fd_derivative(lambda t: f_d1(n, tau, t), x, h=1e-4)
            assert _rel_error(f_d1(n, tau, x), d1) < 1e-5, f"f' mismatch at tau={tau}, x={x}"
            assert _rel_error(f_d2(n, tau, x), d2) < 1e-5, f"f'' mismatch at tau={tau}, x={x}"


def check_gradient_matches_differences():
    tau = 0.7
    for seed in range(3):
        point = random_init(3, 5, 2, seed=seed)
        analytic = ce_gradient(point, tau)
        numeric = fd_gradient(lambda w, h: ce_loss_arrays(w, h, tau), point)
        for a, b in ((analytic.d_weights, numeric.d_weights), (analytic.d_features, numeric.d_features)):
            err = np.max(np.abs(a - b)) / max(np.max(np.abs(b)), 1e-12)
            assert err < 1e-5, f"Gradient mismatch {err:.3e} at seed {seed}"


def check_rotation_invariance():
    rng = np.random.default_rng(7)
    point = random_init(4, 6, 2, seed=11)
    rotation, _ = np.linalg.qr(rng.standard_normal((4, 4)))
    rotated = FeatureSet.normalized(point.weights.vectors @ rotation, point.features @ rotation)
    for tau in TAUS:
        assert abs(ce_loss(point, tau) - ce_loss(rotated, tau)) <= 1e-10


def check_hardmax_conventions():
    square = FeatureSet.selfdual(build_orthoplex_subset(2, 4))
    assert hardmax_loss(square) == -1.0
    assert hardmax_loss(square, convention="printed") == 2.0
    pair = FeatureSet.selfdual(np.array([[1.0, 0.0], [-1.0, 0.0]]))
    assert hardmax_loss(pair) == -2.0
