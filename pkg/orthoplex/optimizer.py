"""
Riemannian gradient descent for the cross-entropy on the product of
unit spheres, with diagnostics measuring how close an iterate is to
self-dual collapse onto a block code.
"""
import itertools
import logging
import math

import numpy as np

from orthoplex.codes import (
    high_entropy_tuple,
    low_entropy_tuple,
    random_config
)
from orthoplex.geometry import gram_components
from orthoplex.losses import (
    MIN_TAU,
    ce_gradient_arrays,
    ce_loss_arrays,
    check_tau
)
from orthoplex.types.config import FeatureSet, SphericalConfig
from orthoplex.types.dimtuple import DimensionTuple
from orthoplex.types.exceptions import (
    OrthoplexArgumentError,
    OrthoplexDivergenceError,
    OrthoplexRegimeError
)
from orthoplex.types.optimizer import (
    CollapseMetrics,
    OptimizerState,
    StepRule
)
from orthoplex.utils import parallel_map

log = logging.getLogger(__name__)

ARMIJO_C = 1e-4
GRAD_TOL = 1e-8
MAX_ITERS = 1000
MAX_BRUTE_FORCE_BLOCKS = 8
INFEASIBLE_GRAM_ERROR = 2.0
ANNEAL_STAGES = 4


def retract(points):
    """ Row normalisation onto the unit sphere """
    return points / np.linalg.norm(points, axis=-1, keepdims=True)


def random_init(d, n, m, seed=None) -> FeatureSet:
    """
    Weights and features drawn as independent random configurations,
    from two child seeds of ``seed``.
    """
    if int(m) < 1:
        raise OrthoplexArgumentError(f"At least one feature per class is required, received m={m}")
    weight_seed, feature_seed = np.random.SeedSequence(seed).spawn(2)
    weights = random_config(d, n, seed=weight_seed)
    features = random_config(d, n * int(m), seed=feature_seed).vectors.reshape(int(n), int(m), int(d))
    return FeatureSet(weights, features)


def selfdual_init(d, n, m, seed=None) -> FeatureSet:
    """ A random weight configuration with ``H = W`` """
    return FeatureSet.selfdual(random_config(d, n, seed=seed), m=m)


def _grad_norm(r_weights, r_features):
    return math.sqrt(float(np.sum(r_weights * r_weights) + np.sum(r_features * r_features)))


def _checked_loss(weights, features, tau, iteration):
    loss = ce_loss_arrays(weights, features, tau)
    if not math.isfinite(loss):
        raise OrthoplexDivergenceError(f"Non-finite loss {loss!r} at iteration {iteration}", iteration)
    return loss


def optimize(init: FeatureSet, tau, max_iters=MAX_ITERS, grad_tol=GRAD_TOL, step_rule=None) -> OptimizerState:
    """
    Minimises the cross-entropy over unit-norm weights and features.

    Each iteration projects the Euclidean gradient onto the tangent
    spaces, steps along its negative and renormalises every row. With
    the ``armijo`` rule the step is halved until the loss decreases by
    at least ``armijo_c * step * |grad|^2``. Each search after the first
    starts from ``grow`` times the previously accepted step, capped at
    ``max_step``.

    Args:
        init (FeatureSet): Starting weights and features
        tau (float): Temperature, at least ``1e-3``
        max_iters (int): Maximum number of accepted steps
        grad_tol (float): Stop once the Riemannian gradient norm is below this
        step_rule (StepRule): Step size policy, Armijo backtracking by default

    Returns:
        :class:`OptimizerState`
    """
    tau = check_tau(tau, minimum=MIN_TAU)
    if int(max_iters) < 1:
        raise OrthoplexArgumentError(f"max_iters must be at least 1, received {max_iters}")
    if not grad_tol > 0:
        raise OrthoplexArgumentError(f"grad_tol must be positive, received {grad_tol!r}")
    rule = step_rule if step_rule is not None else StepRule(armijo_c=ARMIJO_C)

    weights = np.array(init.weights.vectors)
    features = np.array(init.features)
    loss = _checked_loss(weights, features, tau, 0)
    _, _, r_weights, r_features = ce_gradient_arrays(weights, features, tau)
    grad_norm = _grad_norm(r_weights, r_features)

    history = []
    step_count = 0
    accepted = None
    converged = False
    while True:
        history.append((loss, grad_norm))
        if grad_norm < grad_tol:
            converged = True
            break
        if step_count >= int(max_iters):
            break

        if rule.kind == "fixed" or accepted is None:
            step = rule.step_size
        else:
            step = min(rule.max_step, accepted * rule.grow)
        sq_norm = grad_norm * grad_norm
        for _ in range(rule.max_backtracks + 1):
            trial_weights = retract(weights - step * r_weights)
            trial_features = retract(features - step * r_features)
            trial_loss = _checked_loss(trial_weights, trial_features, tau, step_count + 1)
            if rule.kind == "fixed" or trial_loss <= loss - rule.armijo_c * step * sq_norm:
                break
            step *= rule.shrink
        else:
            log.info(f"Line search stalled at iteration {step_count} with grad norm {grad_norm:.3e}")
            break

        weights, features, loss = trial_weights, trial_features, trial_loss
        accepted = step
        step_count += 1
        _, _, r_weights, r_features = ce_gradient_arrays(weights, features, tau)
        grad_norm = _grad_norm(r_weights, r_features)

    log.debug(f"Descent finished after {step_count} steps: loss {loss:.12g}, grad norm {grad_norm:.3e}")
    iterate = FeatureSet(SphericalConfig(weights, unit_tol=init.unit_tol), features, unit_tol=init.unit_tol)
    return OptimizerState(iterate, step_count, loss, grad_norm, history=history, converged=converged,
                          step_size=accepted)


def anneal(init: FeatureSet, tau, start_tau, stages=ANNEAL_STAGES, max_iters=MAX_ITERS, grad_tol=GRAD_TOL,
           step_rule=None) -> OptimizerState:
    """
    Temperature continuation: descends at ``stages`` geometrically spaced
    temperatures from ``start_tau`` down to ``tau``, each stage starting
    from the previous stage's iterate.

    The returned state is that of the final stage, with the step counts
    and loss histories of all stages concatenated. Losses are comparable
    only within a stage.
    """
    tau = check_tau(tau, minimum=MIN_TAU)
    start_tau = check_tau(start_tau, minimum=MIN_TAU)
    if int(stages) < 1:
        raise OrthoplexArgumentError(f"Annealing needs at least one stage, received stages={stages}")

    taus = np.geomspace(start_tau, tau, int(stages)) if int(stages) > 1 else [tau]
    state, history, steps = None, [], 0
    iterate = init
    for stage_tau in taus:
        state = optimize(iterate, stage_tau, max_iters=max_iters, grad_tol=grad_tol, step_rule=step_rule)
        log.debug(f"Stage at tau={stage_tau:.4g} took {state.step} steps to loss {state.loss:.6g}")
        iterate, steps = state.iterate, steps + state.step
        history.extend(state.history)

    return OptimizerState(state.iterate, steps, state.loss, state.grad_norm, history=history,
                          converged=state.converged, step_size=state.step_size)


def ideal_block_gram(blocks, parts):
    """
    The Gram matrix of orthogonal regular simplices placed on the index
    sets ``blocks``, block ``i`` being a ``parts[i]``-simplex.
    """
    n = sum(len(b) for b in blocks)
    gram = np.zeros((n, n))
    for block, p in zip(blocks, parts):
        gram[np.ix_(block, block)] = -1.0 / p
    np.fill_diagonal(gram, 1.0)
    return gram


def gram_error(weights: SphericalConfig, parts) -> float:
    """
    Largest entrywise deviation of the Gram of ``weights`` from the
    ideal self-dual Gram for ``parts``, minimised over the assignments
    of the detected blocks to the tuple's blocks. Returns ``2`` when the
    block sizes cannot be matched.
    """
    dims = parts if isinstance(parts, DimensionTuple) else DimensionTuple(parts)
    gram = weights.gram()
    components = gram_components(gram, 0.5 / max(dims.parts))
    if sorted(len(c) for c in components) != sorted(dims.block_sizes):
        return INFEASIBLE_GRAM_ERROR

    if len(components) <= MAX_BRUTE_FORCE_BLOCKS:
        candidates = sorted(set(itertools.permutations(dims.parts)))
    else:
        by_size = sorted(components, key=len, reverse=True)
        components, candidates = by_size, [sorted(dims.parts, reverse=True)]

    best = INFEASIBLE_GRAM_ERROR
    for assigned in candidates:
        if any(len(c) != p + 1 for c, p in zip(components, assigned)):
            continue
        deviation = float(np.max(np.abs(gram - ideal_block_gram(components, assigned))))
        best = min(best, deviation)
    return best


def collapse_metrics(state, reference_tuple=None) -> CollapseMetrics:
    """
    Duality gap, within-class variability and Gram distances to the
    ideal low- and high-entropy codes of an optimizer state or feature set.
    """
    wh = state.iterate if isinstance(state, OptimizerState) else state
    weights, features = wh.weights.vectors, wh.features
    d, n = wh.d, wh.n
    if not d + 2 <= n <= 2 * d:
        raise OrthoplexRegimeError(d, n)

    duality_gap = float(np.max(np.linalg.norm(features - weights[:, np.newaxis, :], axis=-1)))
    centred = features - features.mean(axis=1, keepdims=True)
    within_class_var = float(np.mean(np.sum(centred * centred, axis=-1)))

    reference_error = None
    if reference_tuple is not None:
        ref = reference_tuple if isinstance(reference_tuple, DimensionTuple) else DimensionTuple(reference_tuple)
        if ref.d != d or ref.d + ref.l != n:
            raise OrthoplexArgumentError(f"Tuple {ref.as_string()} is inconsistent with d={d}, n={n}")
        reference_error = gram_error(wh.weights, ref)

    return CollapseMetrics(
        duality_gap=duality_gap,
        within_class_var=within_class_var,
        gram_error_low=gram_error(wh.weights, low_entropy_tuple(d, n)),
        gram_error_high=gram_error(wh.weights, high_entropy_tuple(d, n)),
        gram_error_reference=reference_error
    )


def run_seeds(d, n, m, tau, seeds, max_iters=MAX_ITERS, grad_tol=GRAD_TOL, step_rule=None, selfdual=False,
              start_tau=None, stages=ANNEAL_STAGES):
    """
    Independent descents from each seed, run concurrently. With
    ``start_tau`` each descent is annealed from that temperature.

    Returns:
        list of (seed, :class:`OptimizerState`) in the order of ``seeds``
    """
    init = selfdual_init if selfdual else random_init

    def descend(seed):
        start = init(d, n, m, seed=seed)
        if start_tau is not None:
            return seed, anneal(start, tau, start_tau, stages=stages, max_iters=max_iters,
                                grad_tol=grad_tol, step_rule=step_rule)
        return seed, optimize(start, tau, max_iters=max_iters, grad_tol=grad_tol, step_rule=step_rule)

    return parallel_map(descend, list(seeds))


def best_run(runs):
    """ The ``(seed, state)`` with the lowest final loss, first seed on ties """
    return min(runs, key=lambda run: run[1].loss)


def experiment_manifest(d, n, m, tau, seeds, step_rule=None, start_tau=None, stages=ANNEAL_STAGES):
    rule = step_rule if step_rule is not None else StepRule(armijo_c=ARMIJO_C)
    manifest = {
        "seeds": list(seeds),
        "tau": float(tau),
        "d": int(d),
        "n": int(n),
        "m": int(m),
        "step_rule": rule.as_dict()
    }
    if start_tau is not None:
        manifest["anneal"] = {"start_tau": float(start_tau), "stages": int(stages)}
    return manifest
