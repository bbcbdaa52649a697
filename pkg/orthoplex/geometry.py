"""
Coherence, margin and the convex geometry behind them: distances to
convex hulls, Radon partitions, rattlers and the block decomposition
of zero-coherence codes.
"""
import logging

import numpy as np
import scipy.optimize
import scipy.sparse
import scipy.sparse.csgraph

from orthoplex.types.config import SphericalConfig
from orthoplex.types.exceptions import (
    OrthoplexArgumentError,
    OrthoplexDecompositionError,
    OrthoplexNoPartitionError,
    OrthoplexNotASphericalCodeError,
    OrthoplexRegimeError
)
from orthoplex.types.geometry import (
    BatchDecomposition,
    HullDistanceResult,
    RadonPartition,
    RattlerReport
)
from orthoplex.utils import parallel_map

log = logging.getLogger(__name__)

GAP_TOL = 1e-10
MAX_FW_ITERS = 10_000
RATTLER_TOL = 1e-7
DECOMPOSE_TOL = 1e-8
RANK_RTOL = 1e-8
ZERO_COEFF_TOL = 1e-12
POLISH_TOL = 1e-14
INTERSECTION_TOL = 1e-8


def _as_array(points):
    if isinstance(points, SphericalConfig):
        return points.vectors
    return np.atleast_2d(np.asarray(points, dtype=float))


def _require_pairs(config):
    if config.n < 2:
        raise OrthoplexArgumentError(f"At least two points are required, received n={config.n}")


def coherence(config: SphericalConfig) -> float:
    """ Largest inner product between two distinct points """
    _require_pairs(config)
    gram = config.gram()
    off_diagonal = ~np.eye(config.n, dtype=bool)
    return float(np.max(gram[off_diagonal]))


def _affine_minimizer(points):
    """
    Weights ``b`` with ``sum(b) == 1`` minimising ``|points.T @ b|``
    over the affine hull of ``points``.
    """
    k = len(points)
    kkt = np.zeros((k + 1, k + 1))
    kkt[:k, :k] = points @ points.T
    kkt[:k, k] = 1.0
    kkt[k, :k] = 1.0
    rhs = np.zeros(k + 1)
    rhs[k] = 1.0
    solution = np.linalg.lstsq(kkt, rhs, rcond=None)[0]
    return solution[:k]


def _min_norm_point(points, gap_tol=GAP_TOL, max_iters=MAX_FW_ITERS):
    """
    Away-step Frank-Wolfe over the simplex of convex weights for
    ``min |points.T @ a|^2``, with exact line search and a fully
    corrective step on the active set after every iteration.

    Returns:
        weights, nearest point, duality gap, iterations, converged
    """
    k = len(points)
    weights = np.zeros(k)
    weights[np.argmin(np.einsum("ij,ij->i", points, points))] = 1.0
    x = points.T @ weights

    gap = np.inf
    iteration = 0
    converged = False
    for iteration in range(max_iters + 1):
        grad = points @ x
        xx = float(x @ x)
        fw_vertex = int(np.argmin(grad))
        gap = xx - float(grad[fw_vertex])
        if gap <= gap_tol:
            converged = True
            break
        if iteration == max_iters:
            break

        active = np.flatnonzero(weights > 0)
        away_vertex = int(active[np.argmax(grad[active])])
        away_gap = float(grad[away_vertex]) - xx

        if gap >= away_gap or weights[away_vertex] >= 1.0:
            toward = True
            direction = points[fw_vertex] - x
            max_step = 1.0
        else:
            toward = False
            direction = x - points[away_vertex]
            max_step = weights[away_vertex] / (1.0 - weights[away_vertex])

        dd = float(direction @ direction)
        if dd <= 0.0:
            break
        step = min(max(-float(x @ direction) / dd, 0.0), max_step)

        if toward:
            weights *= (1.0 - step)
            weights[fw_vertex] += step
        else:
            weights *= (1.0 + step)
            weights[away_vertex] -= step
            if step == max_step:
                weights[away_vertex] = 0.0

        weights = np.clip(weights, 0.0, None)
        weights /= weights.sum()

        support = np.flatnonzero(weights > 0)
        polished = _affine_minimizer(points[support])
        if polished.min() >= -POLISH_TOL:
            polished = np.clip(polished, 0.0, None)
            polished /= polished.sum()
            candidate = np.zeros(k)
            candidate[support] = polished
            x_candidate = points.T @ candidate
            if x_candidate @ x_candidate <= (points.T @ weights) @ (points.T @ weights):
                weights = candidate

        x = points.T @ weights

    return weights, x, max(gap, 0.0), iteration, converged


def hull_distance(query, generators, gap_tol=GAP_TOL, max_iters=MAX_FW_ITERS) -> HullDistanceResult:
    """
    Distance from ``query`` to the convex hull of ``generators``,
    solved as a min-norm-point problem over the translated generators.

    Args:
        query (array-like): A point of ``R^d``
        generators (SphericalConfig | array-like): ``k x d`` hull generators
        gap_tol (float): Duality gap at which the solution is certified
        max_iters (int): Iteration cap for the Frank-Wolfe loop

    Returns:
        :class:`HullDistanceResult`
    """
    query = np.asarray(query, dtype=float).reshape(-1)
    points = _as_array(generators)
    if points.size == 0 or len(points) == 0:
        raise OrthoplexArgumentError("The convex hull of an empty generator set is undefined")
    if points.shape[1] != query.shape[0]:
        raise OrthoplexArgumentError(f"Query of dimension {query.shape[0]} and generators of dimension {points.shape[1]} differ")

    translated = points - query
    weights, x, gap, iterations, converged = _min_norm_point(translated, gap_tol, max_iters)
    if not converged:
        log.warning(f"Frank-Wolfe stopped after {iterations} iterations with gap {gap:.3e}")
    else:
        log.debug(f"Frank-Wolfe converged in {iterations} iterations, gap {gap:.3e}")

    return HullDistanceResult(
        distance=float(np.linalg.norm(x)),
        witness_point=points.T @ weights,
        weights=weights,
        gap=gap,
        iterations=iterations,
        converged=converged
    )


def point_distances(config: SphericalConfig, gap_tol=GAP_TOL):
    """ Distance from each point to the hull of the others """
    vectors = config.vectors

    def distance(j):
        return hull_distance(vectors[j], np.delete(vectors, j, axis=0), gap_tol=gap_tol).distance

    return np.array(parallel_map(distance, range(config.n)))


def margin(config: SphericalConfig, gap_tol=GAP_TOL):
    """
    The margin of ``config``: the least distance from a point to the
    convex hull of the remaining points.

    Returns:
        margin, distances (:class:`Tuple[float, numpy.ndarray]`)
    """
    _require_pairs(config)
    distances = point_distances(config, gap_tol=gap_tol)
    return float(np.min(distances)), distances


def _rank(vectors, rtol=RANK_RTOL):
    singular = np.linalg.svd(np.atleast_2d(vectors), compute_uv=False)
    if singular.size == 0 or singular[0] == 0.0:
        return 0
    return int(np.sum(singular > rtol * singular[0]))


def radon_partition(config: SphericalConfig) -> RadonPartition:
    """
    Splits the points into two sides with intersecting convex hulls,
    read from an affine dependence ``sum(l_i x_i) = 0, sum(l_i) = 0``.
    Indices with vanishing coefficient join ``side_a``.
    """
    vectors = config.vectors
    n, d = vectors.shape
    lifted = np.vstack((vectors.T, np.ones((1, n))))
    _, singular, vh = np.linalg.svd(lifted, full_matrices=True)

    if n <= d + 1:
        rank = int(np.sum(singular > RANK_RTOL * singular[0]))
        if rank == n:
            raise OrthoplexNoPartitionError(f"The {n} points are affinely independent in dimension {d}")

    coefficients = vh[-1].copy()
    leading = np.flatnonzero(np.abs(coefficients) > ZERO_COEFF_TOL)
    if coefficients[leading[0]] < 0:
        coefficients = -coefficients

    positive = coefficients > ZERO_COEFF_TOL
    side_b = np.flatnonzero(coefficients <= -ZERO_COEFF_TOL)
    side_a = np.flatnonzero(coefficients > -ZERO_COEFF_TOL)
    radon_point = coefficients[positive] @ vectors[positive] / coefficients[positive].sum()

    return RadonPartition(side_a, side_b, radon_point, coefficients)


def find_rattlers(config: SphericalConfig, rattler_tol=RATTLER_TOL) -> RattlerReport:
    """
    Softmax rattlers sit strictly farther than the margin from the hull
    of the others; Tammes rattlers have every inner product strictly
    below the coherence.
    """
    _require_pairs(config)
    delta, distances = margin(config)
    alpha = coherence(config)

    gram = config.gram().copy()
    np.fill_diagonal(gram, -np.inf)
    nearest = gram.max(axis=1)

    softmax = np.flatnonzero(distances > delta + rattler_tol)
    tammes = np.flatnonzero(nearest < alpha - rattler_tol)
    return RattlerReport(softmax, tammes)


def gram_components(gram, tol):
    """
    Connected components of the graph joining ``i`` and ``j`` when
    ``|gram[i, j]| > tol``, each sorted, ordered by smallest index.
    """
    adjacency = np.abs(gram) > tol
    np.fill_diagonal(adjacency, False)
    count, labels = scipy.sparse.csgraph.connected_components(
        scipy.sparse.csr_matrix(adjacency), directed=False
    )
    components = [np.flatnonzero(labels == c).tolist() for c in range(count)]
    return sorted(components, key=lambda c: c[0])


def orthoplex_decompose(config: SphericalConfig, tol=DECOMPOSE_TOL) -> BatchDecomposition:
    """
    Decomposes a zero-coherence code of the orthoplex regime into a
    linearly independent part ``s0`` and mutually orthogonal batches
    each of which has one more point than its span has dimensions.
    """
    d, n = config.d, config.n
    if not config.in_orthoplex_regime:
        raise OrthoplexRegimeError(d, n)

    alpha = coherence(config)
    if alpha > tol:
        raise OrthoplexNotASphericalCodeError(f"Coherence {alpha:.3e} exceeds {tol:.1e}")

    s0 = []
    batches = []
    ranks = []
    for component in gram_components(config.gram(), tol):
        rank = _rank(config.vectors[component])
        if rank == len(component):
            s0.extend(component)
        elif rank == len(component) - 1:
            batches.append(component)
            ranks.append(rank)
        else:
            raise OrthoplexDecompositionError(f"Component {component} of size {len(component)} has rank {rank}")

    if s0 and _rank(config.vectors[s0]) != len(s0):
        raise OrthoplexDecompositionError(f"Independent part {s0} is not linearly independent")
    if len(batches) < n - d:
        raise OrthoplexDecompositionError(f"Found {len(batches)} batches, at least n-d={n - d} are required")

    log.debug(f"Decomposed (d={d}, n={n}) into |s0|={len(s0)} and {len(batches)} batches")
    return BatchDecomposition(n, s0, batches, ranks)


def is_spherical_code(config: SphericalConfig, tol=1e-10) -> bool:
    """ True when ``config`` attains Rankin's orthoplex bound ``coherence == 0`` """
    return config.in_orthoplex_regime and coherence(config) <= tol


def intersection_min_norm(config: SphericalConfig, side_a, side_b) -> HullDistanceResult:
    """
    Nearest point to the origin of ``conv(side_a) & conv(side_b)``.
    Weights are reported over ``side_a``.
    """
    side_a, side_b = list(side_a), list(side_b)
    if not side_a or not side_b:
        raise OrthoplexArgumentError("Both sides must be nonempty")

    a_pts = config.vectors[side_a]
    b_pts = config.vectors[side_b]
    ka, kb = len(a_pts), len(b_pts)

    def objective(z):
        v = a_pts.T @ z[:ka]
        return float(v @ v)

    def jacobian(z):
        grad = np.zeros(ka + kb)
        grad[:ka] = 2.0 * a_pts @ (a_pts.T @ z[:ka])
        return grad

    constraints = [
        {"type": "eq", "fun": lambda z: a_pts.T @ z[:ka] - b_pts.T @ z[ka:]},
        {"type": "eq", "fun": lambda z: np.array([z[:ka].sum() - 1.0, z[ka:].sum() - 1.0])},
    ]
    start = np.concatenate((np.full(ka, 1.0 / ka), np.full(kb, 1.0 / kb)))
    result = scipy.optimize.minimize(
        objective, start, jac=jacobian, method="SLSQP",
        bounds=[(0.0, 1.0)] * (ka + kb), constraints=constraints,
        options={"ftol": 1e-15, "maxiter": 1000}
    )

    weights_a = np.clip(result.x[:ka], 0.0, None)
    weights_b = np.clip(result.x[ka:], 0.0, None)
    weights_a /= weights_a.sum()
    weights_b /= weights_b.sum()
    v = a_pts.T @ weights_a
    mismatch = float(np.linalg.norm(v - b_pts.T @ weights_b))
    if mismatch > INTERSECTION_TOL:
        raise OrthoplexNoPartitionError(f"The hulls of {side_a} and {side_b} do not intersect (mismatch {mismatch:.3e})")
    if not result.success:
        log.warning(f"SLSQP reported: {result.message}")

    return HullDistanceResult(
        distance=float(np.linalg.norm(v)),
        witness_point=v,
        weights=weights_a,
        iterations=int(result.nit),
        converged=bool(result.success)
    )


def radon_margin_bound(config: SphericalConfig, side_a, side_b) -> float:
    """
    Upper bound ``sqrt(1 - |v|^2)`` on the margin, where ``v`` is the
    point of ``conv(side_a) & conv(side_b)`` nearest the origin.
    """
    v = intersection_min_norm(config, side_a, side_b).distance
    return float(np.sqrt(max(0.0, 1.0 - v * v)))
