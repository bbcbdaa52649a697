import numpy as np

from orthoplex.codes import build_entropy_code, build_tuple_code
from orthoplex.losses import ce_gradient, ce_loss
from orthoplex.optimizer import collapse_metrics, optimize, random_init
from orthoplex.types.config import FeatureSet
from orthoplex.types.optimizer import StepRule

__key__ = "optimizer"
__suite_name__ = "Sphere Optimizer"
__version__ = "0.1.0"
__description__ = """
Block codes are critical points of the cross-entropy, descent keeps
every row on the sphere without increasing the loss, and collapse
metrics vanish at exact codes.
"""

CROSSOVER = 0.4968
CROSSOVER_TOL = 5e-4


def check_entropy_codes_are_critical():
    for kind in ("low", "high"):
        code, _ = build_entropy_code(4, 6, kind)
        wh = FeatureSet.selfdual(code)
        for tau in (0.1, 0.5, 1.0):
            norm = ce_gradient(wh, tau).riemannian_norm
            assert norm < 1e-6, f"{kind} code at tau={tau} has gradient norm {norm:.3e}"


def check_null_step():
    init = random_init(3, 5, 2, seed=3)
    state = optimize(init, 0.5, max_iters=1, step_rule=StepRule(kind="fixed", step_size=0.0))
    assert np.allclose(state.iterate.weights.vectors, init.weights.vectors, atol=1e-15)
    assert np.allclose(state.iterate.features, init.features, atol=1e-15)
    assert state.step == 1 and abs(state.loss - ce_loss(init, 0.5)) <= 1e-12


def check_descent_is_monotone_on_sphere():
    state = optimize(random_init(2, 4, 1, seed=0), 0.3, max_iters=200)
    losses = [loss for loss, _ in state.history]
    assert all(b <= a for a, b in zip(losses, losses[1:])), "Loss increased along accepted steps"
    norms = np.linalg.norm(state.iterate.features, axis=-1)
    assert np.max(np.abs(norms - 1.0)) <= 1e-12


def check_metrics_at_exact_codes():
    low, _ = build_entropy_code(4, 6, "low")
    metrics = collapse_metrics(FeatureSet.selfdual(low))
    assert metrics.duality_gap == 0.0 and metrics.gram_error_low <= 1e-12
    high, _ = build_entropy_code(4, 6, "high")
    metrics = collapse_metrics(FeatureSet.selfdual(high))
    assert metrics.gram_error_low >= 1.0 / 3.0 and metrics.gram_error_high <= 1e-12


def check_selfdual_loss_sign_flip():
    low = FeatureSet.selfdual(build_tuple_code((3, 1, 1, 1)))
    high = FeatureSet.selfdual(build_tuple_code((2, 2, 1, 1)))
    below = ce_loss(low, CROSSOVER - CROSSOVER_TOL) - ce_loss(high, CROSSOVER - CROSSOVER_TOL)
    above = ce_loss(low, CROSSOVER + CROSSOVER_TOL) - ce_loss(high, CROSSOVER + CROSSOVER_TOL)
    assert below < 0 < above, f"Loss differences {below:.3e}, {above:.3e} do not change sign"
