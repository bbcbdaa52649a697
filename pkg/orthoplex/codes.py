"""
Constructors for the spherical configurations of the orthoplex regime:
regular simplices, orthoplex subsets, low/high-entropy codes, orthogonal
direct sums and seeded random configurations.
"""
import logging

import numpy as np
import scipy.linalg

from orthoplex.types.config import SphericalConfig
from orthoplex.types.dimtuple import DimensionTuple
from orthoplex.types.exceptions import (
    OrthoplexArgumentError,
    OrthoplexDimensionError,
    OrthoplexRegimeError
)

log = logging.getLogger(__name__)

ENTROPY_KINDS = ("low", "high")


def check_regime(d, n):
    if not (d + 2 <= n <= 2 * d):
        raise OrthoplexRegimeError(d, n)


def build_simplex(q: int, d: int) -> SphericalConfig:
    """
    Returns the ``q`` vertices of an origin-centred regular simplex,
    embedded in the first ``q-1`` coordinates of ``R^d``.

    Args:
        q (int): Number of vertices, at least 2
        d (int): Ambient dimension, at least ``q-1``

    Returns:
        :class:`SphericalConfig` whose Gram matrix has off-diagonal
        entries ``-1/(q-1)``.
    """
    q, d = int(q), int(d)
    if q < 2:
        raise OrthoplexArgumentError(f"A simplex needs at least 2 points, received q={q}")
    if q > d + 1:
        raise OrthoplexDimensionError(f"A {q}-point simplex does not fit in dimension {d}")

    centred = np.eye(q) - np.full((q, q), 1.0 / q)
    # Columns 0..q-2 of the centring matrix span the complement of the ones vector
    basis, r = scipy.linalg.qr(centred[:, :q - 1], mode="economic")
    basis = basis * np.sign(np.diag(r))

    coords = centred @ basis
    coords /= np.linalg.norm(coords, axis=1, keepdims=True)

    vectors = np.zeros((q, d))
    vectors[:, :q - 1] = coords
    log.debug(f"Built {q}-point simplex in R^{d}")
    return SphericalConfig(vectors)


def build_orthoplex_subset(d: int, n: int) -> SphericalConfig:
    """
    The first ``n`` points of ``+e1, -e1, ..., +e_{n-d}, -e_{n-d}``
    followed by ``e_{n-d+1}, ..., e_d``.
    """
    d, n = int(d), int(n)
    check_regime(d, n)

    pairs = n - d
    vectors = np.zeros((n, d))
    row = 0
    for axis in range(pairs):
        vectors[row, axis] = 1.0
        vectors[row + 1, axis] = -1.0
        row += 2
    for axis in range(pairs, d):
        vectors[row, axis] = 1.0
        row += 1

    return SphericalConfig(vectors)


def direct_sum(blocks) -> SphericalConfig:
    """
    Orthogonal direct sum: block ``i`` occupies the coordinate range
    following those of blocks ``0..i-1``.
    """
    blocks = list(blocks)
    if not blocks:
        raise OrthoplexArgumentError("A direct sum needs at least one block")

    d = sum(b.d for b in blocks)
    n = sum(b.n for b in blocks)
    vectors = np.zeros((n, d))
    row, col = 0, 0
    for block in blocks:
        vectors[row:row + block.n, col:col + block.d] = block.vectors
        row += block.n
        col += block.d

    return SphericalConfig(vectors)


def build_tuple_code(parts) -> SphericalConfig:
    """
    The self-dual code of mutually orthogonal regular simplices with
    block dimensions ``parts``; block ``i`` has ``parts[i]+1`` points.
    """
    dims = parts if isinstance(parts, DimensionTuple) else DimensionTuple(parts)
    return direct_sum(build_simplex(p + 1, p) for p in dims)


def low_entropy_tuple(d: int, n: int) -> DimensionTuple:
    check_regime(d, n)
    l = n - d  # noqa: E741
    return DimensionTuple([2 * d - n + 1] + [1] * (l - 1))


def high_entropy_tuple(d: int, n: int) -> DimensionTuple:
    check_regime(d, n)
    l = n - d  # noqa: E741
    q, r = divmod(d, l)
    return DimensionTuple([q + 1] * r + [q] * (l - r))


def build_entropy_code(d: int, n: int, kind: str = "low"):
    """
    Returns the low- or high-entropy softmax code for ``(d, n)`` and
    its dimension tuple.

    Args:
        d (int): Ambient dimension
        n (int): Number of points, ``d+2 <= n <= 2d``
        kind (str): ``low`` for one large simplex plus antipodal pairs,
            ``high`` for nearly equal simplices

    Returns:
        code, dims (:class:`Tuple[SphericalConfig, DimensionTuple]`)
    """
    d, n = int(d), int(n)
    if kind == "low":
        dims = low_entropy_tuple(d, n)
    elif kind == "high":
        dims = high_entropy_tuple(d, n)
    else:
        raise OrthoplexArgumentError(f"Unknown entropy kind {kind!r}, expected one of {ENTROPY_KINDS}")

    return build_tuple_code(dims), dims


def random_config(d: int, n: int, seed=None) -> SphericalConfig:
    """
    ``n`` independent standard normal vectors in ``R^d`` scaled to
    unit length. Deterministic for a given ``seed``.
    """
    d, n = int(d), int(n)
    if d < 1 or n < 1:
        raise OrthoplexArgumentError(f"Random configurations need d >= 1 and n >= 1, received d={d}, n={n}")

    rng = np.random.default_rng(seed)
    gaussian = rng.standard_normal((n, d))
    norms = np.linalg.norm(gaussian, axis=1, keepdims=True)
    # A zero draw has probability zero; redraw rather than divide by it
    while np.any(norms == 0):
        zero = norms[:, 0] == 0
        gaussian[zero] = rng.standard_normal((int(zero.sum()), d))
        norms = np.linalg.norm(gaussian, axis=1, keepdims=True)

    return SphericalConfig(gaussian / norms)


def perturbed(config: SphericalConfig, scale: float, seed=None) -> SphericalConfig:
    """ Gaussian perturbation of every row, re-normalised onto the sphere """
    rng = np.random.default_rng(seed)
    noisy = config.vectors + float(scale) * rng.standard_normal(config.vectors.shape)
    return SphericalConfig.normalized(noisy)


def planar_config(degrees) -> SphericalConfig:
    """ Points on the unit circle at the given angles in degrees """
    radians = np.deg2rad(np.asarray(degrees, dtype=float))
    return SphericalConfig.normalized(np.column_stack((np.cos(radians), np.sin(radians))))


def regime_pairs(dims):
    """ Every ``(d, n)`` with ``d+2 <= n <= 2d`` for ``d`` in ``dims`` """
    return [(d, n) for d in dims for n in range(d + 2, 2 * d + 1)]
