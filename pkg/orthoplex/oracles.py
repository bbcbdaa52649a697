"""
Slow, independent reference computations used to cross-check the
solvers in tests and in ``orthoplex verify``. Nothing in the library
proper imports this module.
"""
import itertools
import logging
import math

import numpy as np

from orthoplex.types.config import FeatureSet, SphericalConfig
from orthoplex.types.dimtuple import DimensionTuple
from orthoplex.types.exceptions import (
    OrthoplexArgumentError,
    OrthoplexOracleScaleError,
    OrthoplexRegimeError
)
from orthoplex.types.loss import GradientPair
from orthoplex.types.oracle import OracleReport

log = logging.getLogger(__name__)

MAX_GENERATORS = 5
MAX_GRID_POINTS = 200_000
REFINE_TOL = 1e-9
FD_STEP = 1e-6


def _grid_count(depth, k):
    return math.comb(depth + k - 1, k - 1)


def barycentric_grid(depth, k):
    """
    Every weight vector of ``k`` nonnegative multiples of ``1/depth``
    summing to one, as a ``C(depth+k-1, k-1) x k`` array.
    """
    bars = np.array(list(itertools.combinations(range(depth + k - 1), k - 1)), dtype=int).reshape(-1, k - 1)
    rows = bars.shape[0]
    edges = np.hstack((np.full((rows, 1), -1), bars, np.full((rows, 1), depth + k - 1)))
    return (np.diff(edges, axis=1) - 1) / depth


def hull_distance_oracle(query, generators, grid_depth=200):
    """
    Distance from ``query`` to the hull of at most five generators, by
    exhaustive search over a barycentric grid followed by pattern
    search along the edge directions ``e_i - e_j`` with halving steps.
    The grid is coarsened when ``grid_depth`` would exceed
    ``MAX_GRID_POINTS`` points.
    """
    query = np.asarray(query, dtype=float).reshape(-1)
    points = generators.vectors if isinstance(generators, SphericalConfig) else np.atleast_2d(np.asarray(generators, dtype=float))
    k = len(points)
    if k > MAX_GENERATORS:
        raise OrthoplexOracleScaleError(f"The hull oracle handles at most {MAX_GENERATORS} generators, received {k}")
    if int(grid_depth) < 2:
        raise OrthoplexArgumentError(f"grid_depth must be at least 2, received {grid_depth}")
    if k == 1:
        return float(np.linalg.norm(query - points[0]))

    def sq_distance(weights):
        residual = query - weights @ points
        return float(residual @ residual)

    depth = int(grid_depth)
    while depth > 2 and _grid_count(depth, k) > MAX_GRID_POINTS:
        depth -= 1
    grid = barycentric_grid(depth, k)
    residuals = query - grid @ points
    sq_dists = np.einsum("ij,ij->i", residuals, residuals)
    best = grid[np.argmin(sq_dists)].copy()
    best_dist = float(np.min(sq_dists))
    log.debug(f"Hull oracle grid depth {depth}, {len(grid)} points, coarse distance {math.sqrt(best_dist):.9f}")

    pairs = [(i, j) for i in range(k) for j in range(k) if i != j]
    step = 1.0 / depth
    while step >= REFINE_TOL:
        improved = True
        while improved:
            improved = False
            for i, j in pairs:
                move = min(step, best[j])
                if move <= 0:
                    continue
                trial = best.copy()
                trial[i] += move
                trial[j] -= move
                trial_dist = sq_distance(trial)
                if trial_dist < best_dist:
                    best, best_dist, improved = trial, trial_dist, True
        step /= 2

    return math.sqrt(best_dist)


def fd_gradient(func, point: FeatureSet, h=FD_STEP) -> GradientPair:
    """
    Central differences of ``func(weights, features)`` in every
    coordinate, with the tangent projection applied afterwards.
    """
    if not h > 0:
        raise OrthoplexArgumentError(f"Step h must be positive, received {h!r}")

    weights = np.array(point.weights.vectors)
    features = np.array(point.features)

    def partials(array, evaluate):
        grad = np.zeros_like(array)
        for idx in np.ndindex(array.shape):
            saved = array[idx]
            array[idx] = saved + h
            upper = evaluate()
            array[idx] = saved - h
            lower = evaluate()
            array[idx] = saved
            grad[idx] = (upper - lower) / (2 * h)
        return grad

    d_weights = partials(weights, lambda: func(weights, features))
    d_features = partials(features, lambda: func(weights, features))

    r_weights = d_weights - np.sum(d_weights * weights, axis=-1, keepdims=True) * weights
    r_features = d_features - np.sum(d_features * features, axis=-1, keepdims=True) * features
    return GradientPair(d_weights, d_features, r_weights, r_features, weights=weights, features=features)


def fd_derivative(func, x, h=FD_STEP):
    if not h > 0:
        raise OrthoplexArgumentError(f"Step h must be positive, received {h!r}")
    return (func(x + h) - func(x - h)) / (2 * h)


def _tuples_by_scan(d, l):  # noqa: E741
    found = [c for c in itertools.combinations_with_replacement(range(d, 0, -1), l) if sum(c) == d]
    return sorted(found, reverse=True)


def _closed_form_direct(parts, n, tau):
    beta = 1.0 / tau
    total = 0.0
    for p in parts:
        total += (p + 1) * math.log(n - (p + 1) + math.exp(beta) + p * math.exp(-beta / p))
    return total / n - beta


def tuple_argmin_oracle(d, n, tau) -> DimensionTuple:
    """
    Linear scan for the tuple minimising the self-dual closed form,
    transcribed directly. Valid while ``exp(1/tau)`` is representable.
    """
    d, n = int(d), int(n)
    if not d + 2 <= n <= 2 * d:
        raise OrthoplexRegimeError(d, n)

    best, best_loss = None, math.inf
    for parts in _tuples_by_scan(d, n - d):
        loss = _closed_form_direct(parts, n, float(tau))
        if loss < best_loss:
            best, best_loss = parts, loss
    return DimensionTuple(best)


def compare(instance, oracle_value, solver_value) -> OracleReport:
    report = OracleReport(instance, oracle_value, solver_value)
    log.debug(f"{instance}: oracle {report.data['oracle']:.12g}, solver {report.data['solver']:.12g}")
    return report
