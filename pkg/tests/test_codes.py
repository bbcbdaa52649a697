import numpy as np
import pytest

from orthoplex.codes import (
    build_entropy_code,
    build_orthoplex_subset,
    build_simplex,
    build_tuple_code,
    direct_sum,
    high_entropy_tuple,
    low_entropy_tuple,
    perturbed,
    planar_config,
    random_config,
    regime_pairs
)
from orthoplex.geometry import coherence
from orthoplex.types.exceptions import (
    OrthoplexArgumentError,
    OrthoplexDimensionError,
    OrthoplexRegimeError
)


@pytest.mark.parametrize(("q", "d"), [(2, 1), (3, 2), (4, 3), (5, 7)])
def test_simplex_gram(q, d):
    """
    Are simplex vertices unit vectors with inner products -1/(q-1)?
    """
    gram = build_simplex(q, d).gram()
    expected = np.full((q, q), -1.0 / (q - 1))
    np.fill_diagonal(expected, 1.0)
    assert np.allclose(gram, expected, atol=1e-12)


def test_simplex_embedding():
    simplex = build_simplex(3, 4)
    assert simplex.vectors.shape == (3, 4)
    assert np.all(simplex.vectors[:, 2:] == 0.0)


def test_oversized_simplex():
    with pytest.raises(OrthoplexDimensionError):
        build_simplex(4, 2)


def test_degenerate_simplex():
    with pytest.raises(OrthoplexArgumentError):
        build_simplex(1, 3)


def test_orthoplex_subset_layout(orthoplex_3_5):
    expected = np.array([
        [1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, -1.0, 0.0],
        [0.0, 0.0, 1.0]
    ])
    assert np.array_equal(orthoplex_3_5.vectors, expected)
    assert coherence(orthoplex_3_5) == 0.0


@pytest.mark.parametrize(("d", "n"), [(3, 4), (3, 7), (1, 2)])
def test_orthoplex_subset_outside_regime(d, n):
    with pytest.raises(OrthoplexRegimeError):
        build_orthoplex_subset(d, n)


@pytest.mark.parametrize(
    ("d", "n", "low", "high"), [
        (4, 6, (3, 1), (2, 2)),
        (6, 10, (3, 1, 1, 1), (2, 2, 1, 1)),
        (7, 10, (5, 1, 1), (3, 2, 2)),
        (8, 10, (7, 1), (4, 4)),
        (3, 6, (1, 1, 1), (1, 1, 1))
    ]
)
def test_entropy_tuples(d, n, low, high):
    assert low_entropy_tuple(d, n) == low
    assert high_entropy_tuple(d, n) == high


def test_entropy_codes(low_code, high_code):
    """
    Are both entropy codes for (4, 6) zero-coherence codes of the right size?
    """
    for code in (low_code, high_code):
        assert (code.d, code.n) == (4, 6)
        assert abs(coherence(code)) <= 1e-12


def test_unknown_entropy_kind():
    with pytest.raises(OrthoplexArgumentError):
        build_entropy_code(4, 6, "medium")


def test_tuple_code_blocks():
    """
    Does a tuple code place each simplex on its own coordinates?
    """
    gram = build_tuple_code((2, 1)).gram()
    assert gram.shape == (5, 5)
    assert np.allclose(gram[:3, :3], [[1.0, -0.5, -0.5], [-0.5, 1.0, -0.5], [-0.5, -0.5, 1.0]])
    assert np.allclose(gram[3:, 3:], [[1.0, -1.0], [-1.0, 1.0]])
    assert np.allclose(gram[:3, 3:], 0.0)


def test_empty_direct_sum():
    with pytest.raises(OrthoplexArgumentError):
        direct_sum([])


def test_random_config_seeded():
    """
    Is a random configuration reproducible from its seed and unit norm?
    """
    first, second = random_config(3, 5, seed=11), random_config(3, 5, seed=11)
    assert first == second
    assert first != random_config(3, 5, seed=12)
    assert np.allclose(np.linalg.norm(first.vectors, axis=1), 1.0, atol=1e-12)


def test_perturbed_stays_on_sphere(square):
    noisy = perturbed(square, 0.1, seed=4)
    assert noisy.vectors.shape == square.vectors.shape
    assert np.allclose(np.linalg.norm(noisy.vectors, axis=1), 1.0, atol=1e-12)


def test_planar_config():
    config = planar_config([0, 90, 180])
    assert np.allclose(config.vectors, [[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0]], atol=1e-15)


def test_regime_pairs():
    assert regime_pairs([2, 3]) == [(2, 4), (3, 5), (3, 6)]
