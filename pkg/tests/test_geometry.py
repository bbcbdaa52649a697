import numpy as np
import pytest

from orthoplex.codes import (
    build_orthoplex_subset,
    build_simplex,
    random_config
)
from orthoplex.geometry import (
    coherence,
    find_rattlers,
    gram_components,
    hull_distance,
    intersection_min_norm,
    is_spherical_code,
    margin,
    orthoplex_decompose,
    point_distances,
    radon_margin_bound,
    radon_partition
)
from orthoplex.types.exceptions import (
    OrthoplexArgumentError,
    OrthoplexNoPartitionError,
    OrthoplexNotASphericalCodeError,
    OrthoplexRegimeError
)

DISTANCE_TOL = 1e-8


def test_coherence(square):
    assert coherence(square) == 0.0
    assert coherence(build_simplex(3, 2)) == pytest.approx(-0.5, abs=1e-12)


def test_coherence_single_point():
    with pytest.raises(OrthoplexArgumentError):
        coherence(build_orthoplex_subset(2, 4).subset([0]))


def test_hull_distance_to_segment():
    """
    Is the nearest point of a segment found with its convex weights?
    """
    result = hull_distance([2.0, 0.0], [[0.0, 1.0], [0.0, -1.0]])
    assert result.converged
    assert result.distance == pytest.approx(2.0, abs=DISTANCE_TOL)
    assert np.allclose(result.witness_point, [0.0, 0.0], atol=DISTANCE_TOL)
    assert np.allclose(result.weights, [0.5, 0.5], atol=DISTANCE_TOL)


def test_hull_distance_to_vertex():
    result = hull_distance([2.0, 2.0], [[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]])
    assert result.distance == pytest.approx(np.sqrt(4.5), abs=DISTANCE_TOL)
    assert np.allclose(result.witness_point, [0.5, 0.5], atol=DISTANCE_TOL)


def test_hull_distance_interior(square):
    """ A point inside the hull is at distance zero """
    result = hull_distance([0.1, -0.2], square)
    assert result.distance <= DISTANCE_TOL
    assert result.weights.sum() == pytest.approx(1.0)


@pytest.mark.parametrize(
    ("name_title", "query", "generators"), [
        ("DIMENSION_MISMATCH", [1.0, 0.0, 0.0], [[1.0, 0.0]]),
        ("EMPTY", [1.0, 0.0], np.zeros((0, 2)))
    ]
)
def test_hull_distance_invalid(name_title, query, generators):
    with pytest.raises(OrthoplexArgumentError):
        hull_distance(query, generators)


def test_margin_of_triangle():
    """
    Each vertex of the planar triangle is 3/2 from the opposite edge
    """
    delta, distances = margin(build_simplex(3, 2))
    assert delta == pytest.approx(1.5, abs=DISTANCE_TOL)
    assert np.allclose(distances, 1.5, atol=DISTANCE_TOL)


def test_margin_of_zero_coherence_codes(square, orthoplex_3_5, low_code, high_code):
    for code in (square, orthoplex_3_5, low_code, high_code):
        delta, distances = margin(code)
        assert delta == pytest.approx(1.0, abs=DISTANCE_TOL)
        assert len(distances) == code.n


def test_random_margin_below_one():
    config = random_config(3, 5, seed=2)
    delta, _ = margin(config)
    assert delta < 1.0
    assert np.array_equal(point_distances(config), margin(config)[1])


def test_radon_partition_of_square(square):
    """
    Do the two antipodal pairs of the square split with the origin as
    their common point?
    """
    part = radon_partition(square)
    assert part.side_a == [0, 1]
    assert part.side_b == [2, 3]
    assert np.allclose(part.radon_point, [0.0, 0.0], atol=1e-12)


@pytest.mark.parametrize("seed", range(8))
def test_radon_point_in_both_hulls(seed):
    config = random_config(3, 5 + seed % 2, seed=seed)
    part = radon_partition(config)
    for side in part.sides():
        assert hull_distance(part.radon_point, config.vectors[list(side)]).distance <= DISTANCE_TOL


def test_radon_partition_independent_points():
    with pytest.raises(OrthoplexNoPartitionError):
        radon_partition(build_simplex(3, 2))


@pytest.mark.parametrize("seed", range(4))
def test_radon_margin_bound(seed):
    """
    Is the margin bounded by the nearest common point of a Radon partition?
    """
    config = random_config(2, 4, seed=seed)
    part = radon_partition(config)
    bound = radon_margin_bound(config, part.side_a, part.side_b)
    delta, _ = margin(config)
    assert delta <= bound + 1e-6


def test_intersection_requires_both_sides(square):
    with pytest.raises(OrthoplexArgumentError):
        intersection_min_norm(square, [0, 1], [])


def test_intersection_of_disjoint_hulls(square):
    with pytest.raises(OrthoplexNoPartitionError):
        intersection_min_norm(square, [0], [1])


def test_planar_rattlers(planar_rattlers):
    """
    Are the points at 90 and 180 degrees Tammes rattlers of the
    0/90/180/300 configuration?
    """
    report = find_rattlers(planar_rattlers)
    assert report.tammes == [1, 2]


def test_codes_are_rattler_free(orthoplex_3_5, low_code):
    for code in (orthoplex_3_5, low_code):
        softmax, tammes = find_rattlers(code)
        assert len(softmax) == 0 and len(tammes) == 0


def test_gram_components():
    gram = np.array([
        [1.0, 0.0, -0.9],
        [0.0, 1.0, 0.0],
        [-0.9, 0.0, 1.0]
    ])
    assert gram_components(gram, 0.5) == [[0, 2], [1]]


def test_decompose_orthoplex_subset(orthoplex_3_5):
    decomposition = orthoplex_decompose(orthoplex_3_5)
    assert decomposition.s0 == [4]
    assert decomposition.batches == [[0, 1], [2, 3]]
    assert decomposition.ranks == [1, 1]
    assert decomposition.l == 2


def test_decompose_low_entropy_code(low_code):
    """
    Does the low-entropy code split into a tetrahedron and an antipodal pair?
    """
    decomposition = orthoplex_decompose(low_code)
    assert decomposition.s0 == []
    assert decomposition.batches == [[0, 1, 2, 3], [4, 5]]
    assert decomposition.ranks == [3, 1]


def test_decompose_rejects_positive_coherence():
    with pytest.raises(OrthoplexNotASphericalCodeError):
        orthoplex_decompose(random_config(3, 5, seed=0))


def test_decompose_outside_regime():
    with pytest.raises(OrthoplexRegimeError):
        orthoplex_decompose(build_simplex(3, 2))


def test_is_spherical_code(square):
    assert is_spherical_code(square)
    assert not is_spherical_code(random_config(2, 4, seed=0))
    assert not is_spherical_code(build_simplex(3, 2))
