import numpy as np
import pytest

from orthoplex.codes import build_simplex
from orthoplex.losses import ce_loss
from orthoplex.optimizer import (
    INFEASIBLE_GRAM_ERROR,
    anneal,
    best_run,
    collapse_metrics,
    experiment_manifest,
    gram_error,
    ideal_block_gram,
    optimize,
    random_init,
    retract,
    run_seeds,
    selfdual_init
)
from orthoplex.types.config import FeatureSet
from orthoplex.types.exceptions import (
    OrthoplexArgumentError,
    OrthoplexRegimeError
)
from orthoplex.types.optimizer import StepRule

SEEDS = range(20)
COLLAPSE_TOL = 0.05


def test_retract():
    points = retract(np.array([[3.0, 4.0], [0.0, 0.5]]))
    assert np.allclose(points, [[0.6, 0.8], [0.0, 1.0]])


def test_random_init_shapes():
    wh = random_init(3, 5, 2, seed=1)
    assert (wh.d, wh.n, wh.m) == (3, 5, 2)
    assert np.allclose(np.linalg.norm(wh.features, axis=-1), 1.0, atol=1e-12)


def test_random_init_seeded():
    """
    Are weights and features reproducible but drawn independently?
    """
    first, second = random_init(2, 4, 1, seed=7), random_init(2, 4, 1, seed=7)
    assert np.array_equal(first.weights.vectors, second.weights.vectors)
    assert np.array_equal(first.features, second.features)
    assert not np.allclose(first.features[:, 0, :], first.weights.vectors)


def test_random_init_needs_features():
    with pytest.raises(OrthoplexArgumentError):
        random_init(2, 4, 0, seed=1)


def test_selfdual_init():
    wh = selfdual_init(3, 5, 2, seed=4)
    assert np.array_equal(wh.features[:, 1, :], wh.weights.vectors)


def test_code_is_fixed_point(low_code):
    """
    Does descent started at an entropy code stop without moving?
    """
    init = FeatureSet.selfdual(low_code)
    state = optimize(init, 0.5, grad_tol=1e-6)
    assert state.converged and state.step == 0
    assert np.allclose(state.iterate.weights.vectors, low_code.vectors, atol=1e-8)


def test_null_step():
    init = random_init(3, 5, 2, seed=3)
    state = optimize(init, 0.5, max_iters=1, step_rule=StepRule(kind="fixed", step_size=0.0))
    assert state.step == 1 and not state.converged
    assert np.allclose(state.iterate.features, init.features, atol=1e-15)
    assert state.loss == pytest.approx(ce_loss(init, 0.5), abs=1e-12)


def test_descent_is_monotone():
    """
    Do accepted steps never raise the loss or leave the spheres?
    """
    state = optimize(random_init(3, 5, 2, seed=0), 0.3, max_iters=150)
    losses = [loss for loss, _ in state.history]
    assert len(losses) == state.step + 1
    assert all(b <= a for a, b in zip(losses, losses[1:]))
    assert np.max(np.abs(np.linalg.norm(state.iterate.weights.vectors, axis=-1) - 1.0)) <= 1e-12
    assert np.max(np.abs(np.linalg.norm(state.iterate.features, axis=-1) - 1.0)) <= 1e-12


def test_step_grows_at_low_temperature():
    """
    Does the accepted step grow past its initial size once the loss
    flattens, while every step still decreases the loss?
    """
    state = optimize(random_init(4, 6, 2, seed=0), 0.05, max_iters=200)
    assert state.step_size is not None and state.step_size > 1.0
    losses = [loss for loss, _ in state.history]
    assert all(b <= a for a, b in zip(losses, losses[1:]))


def test_step_capped():
    rule = StepRule(max_step=1.0)
    state = optimize(random_init(4, 6, 2, seed=0), 0.05, max_iters=50, step_rule=rule)
    assert state.step_size <= 1.0


def test_fixed_rule_ignores_growth():
    rule = StepRule(kind="fixed", step_size=0.01)
    state = optimize(random_init(3, 5, 2, seed=2), 0.5, max_iters=5, step_rule=rule)
    assert state.step == 5 and state.step_size == 0.01


@pytest.mark.parametrize(
    ("name_title", "kwargs"), [
        ("ZERO_ITERS", {"max_iters": 0}),
        ("ZERO_GRAD_TOL", {"grad_tol": 0.0}),
        ("SMALL_TAU", {"tau": 1e-4})
    ]
)
def test_optimize_invalid_arguments(name_title, kwargs):
    args = {"tau": 0.5, **kwargs}
    with pytest.raises(OrthoplexArgumentError):
        optimize(random_init(2, 4, 1, seed=0), **args)


def test_anneal_stages():
    """
    Does annealing chain its stages and finish at the target temperature?
    """
    init = random_init(3, 5, 2, seed=1)
    state = anneal(init, 0.2, 0.5, stages=3, max_iters=5)
    assert len(state.history) == state.step + 3
    assert state.loss == pytest.approx(ce_loss(state.iterate, 0.2), abs=1e-12)


def test_anneal_single_stage_is_plain_descent():
    init = random_init(3, 5, 2, seed=1)
    annealed = anneal(init, 0.2, 0.5, stages=1, max_iters=20)
    plain = optimize(init, 0.2, max_iters=20)
    assert annealed.history == plain.history


def test_anneal_needs_a_stage():
    with pytest.raises(OrthoplexArgumentError):
        anneal(random_init(2, 4, 1, seed=0), 0.2, 0.5, stages=0)


def test_ideal_block_gram():
    gram = ideal_block_gram([[0, 2], [1, 3, 4]], (1, 2))
    assert gram[0, 2] == -1.0 and gram[1, 4] == -0.5
    assert gram[0, 1] == 0.0
    assert np.all(np.diag(gram) == 1.0)


def test_gram_error(low_code, high_code):
    """
    Is the Gram error zero against the matching tuple and infeasible
    against a tuple with other block sizes?
    """
    assert gram_error(low_code, (3, 1)) <= 1e-12
    assert gram_error(high_code, (2, 2)) <= 1e-12
    assert gram_error(low_code, (2, 2)) == INFEASIBLE_GRAM_ERROR


def test_gram_error_ignores_order(square):
    shuffled = square.subset([2, 0, 3, 1])
    assert gram_error(shuffled, (1, 1)) <= 1e-12


def test_metrics_at_codes(low_code, high_code):
    low = collapse_metrics(FeatureSet.selfdual(low_code, m=2))
    assert low.duality_gap == 0.0 and low.within_class_var == 0.0
    assert low.gram_error_low <= 1e-12
    high = collapse_metrics(FeatureSet.selfdual(high_code), reference_tuple=(2, 2))
    assert high.gram_error_low >= 1.0 / 3.0
    assert high.gram_error_high <= 1e-12 and high.gram_error_reference <= 1e-12


def test_metrics_outside_regime():
    with pytest.raises(OrthoplexRegimeError):
        collapse_metrics(FeatureSet.selfdual(build_simplex(3, 2)))


def test_metrics_inconsistent_reference(low_code):
    with pytest.raises(OrthoplexArgumentError):
        collapse_metrics(FeatureSet.selfdual(low_code), reference_tuple=(2, 1))


def test_run_seeds_order():
    runs = run_seeds(2, 4, 1, 0.5, [3, 1, 2], max_iters=5)
    assert [seed for seed, _ in runs] == [3, 1, 2]
    seed, state = best_run(runs)
    assert state.loss == min(s.loss for _, s in runs)


def test_experiment_manifest():
    manifest = experiment_manifest(4, 6, 2, 0.05, range(3))
    assert manifest["seeds"] == [0, 1, 2]
    assert (manifest["d"], manifest["n"], manifest["m"]) == (4, 6, 2)
    assert manifest["step_rule"]["kind"] == "armijo"


@pytest.mark.slow
def test_square_collapse():
    """
    Does at least one of twenty seeds collapse onto the square?
    """
    runs = run_seeds(2, 4, 1, 0.3, SEEDS)
    errors = [gram_error(state.iterate.weights, (1, 1)) for _, state in runs]
    assert min(errors) < COLLAPSE_TOL


@pytest.mark.slow
def test_low_temperature_selfdual_low_entropy():
    """
    Does one of twenty seeds, annealed down to tau=0.05, end self-dual on
    the low-entropy code?
    """
    runs = run_seeds(4, 6, 2, 0.05, SEEDS, max_iters=3000, grad_tol=1e-13, start_tau=0.15)
    metrics = [collapse_metrics(state) for _, state in runs]
    assert min(max(m.duality_gap, m.gram_error_low) for m in metrics) < COLLAPSE_TOL


@pytest.mark.slow
def test_high_temperature_high_entropy():
    runs = run_seeds(4, 6, 2, 2.0, SEEDS)
    assert min(collapse_metrics(state).gram_error_high for _, state in runs) < COLLAPSE_TOL
