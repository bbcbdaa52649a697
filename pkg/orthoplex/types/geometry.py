import numpy as np

from .base import OrthoplexType

WEIGHT_TOL = 1e-10


class HullDistanceResult(OrthoplexType):
    """
    Distance from a query point to the convex hull of a set of
    generators, with the nearest hull point and its convex weights.
    ``gap`` is the Frank-Wolfe duality gap certifying optimality.
    """
    def __init__(self, distance, witness_point, weights, gap=0.0, iterations=0, converged=True):
        self.data = {
            "distance": float(distance),
            "witness_point": np.asarray(witness_point, dtype=float),
            "weights": np.asarray(weights, dtype=float),
            "gap": float(gap),
            "iterations": int(iterations),
            "converged": bool(converged)
        }

    @property
    def distance(self):
        return self.data["distance"]

    @property
    def witness_point(self):
        return self.data["witness_point"]

    @property
    def weights(self):
        return self.data["weights"]

    @property
    def gap(self):
        return self.data["gap"]

    @property
    def iterations(self):
        return self.data["iterations"]

    @property
    def converged(self):
        return self.data["converged"]

    def __repr__(self):
        return f"{self.__class__.__qualname__}(distance={self.distance!r}, gap={self.gap:.1e})"


    """ Validation rules """

    def rule_distance_nonnegative(self):
        assert self.distance >= 0.0, "Hull distance is negative"

    def rule_weights_nonnegative(self):
        assert np.all(self.weights >= 0.0), "Convex weights contain negative entries"

    def rule_weights_sum_to_one(self):
        total = float(np.sum(self.weights))
        assert abs(total - 1.0) <= WEIGHT_TOL, f"Convex weights sum to {total!r}"


class RadonPartition(OrthoplexType):
    """
    A split of the point indices into two sides whose convex hulls
    share ``radon_point``. ``coefficients`` is the affine dependence
    the split was read from.
    """
    def __init__(self, side_a, side_b, radon_point, coefficients):
        self.data = {
            "side_a": sorted(int(i) for i in side_a),
            "side_b": sorted(int(i) for i in side_b),
            "radon_point": np.asarray(radon_point, dtype=float),
            "coefficients": np.asarray(coefficients, dtype=float)
        }

    @property
    def side_a(self):
        return self.data["side_a"]

    @property
    def side_b(self):
        return self.data["side_b"]

    @property
    def radon_point(self):
        return self.data["radon_point"]

    @property
    def coefficients(self):
        return self.data["coefficients"]

    def sides(self):
        return frozenset((frozenset(self.side_a), frozenset(self.side_b)))


    """ Validation rules """

    def rule_sides_nonempty(self):
        assert self.side_a and self.side_b, "Both sides of a Radon partition must be nonempty"

    def rule_sides_disjoint(self):
        assert not set(self.side_a) & set(self.side_b), "Radon partition sides overlap"

    def rule_sides_cover(self):
        covered = sorted(self.side_a + self.side_b)
        assert covered == list(range(len(self.coefficients))), "Radon partition sides do not cover every index"


class BatchDecomposition(OrthoplexType):
    """
    Decomposition of a zero-coherence code into a linearly independent
    part ``s0`` and mutually orthogonal simplex batches.
    """
    def __init__(self, n, s0, batches, ranks):
        self.data = {
            "n": int(n),
            "s0": sorted(int(i) for i in s0),
            "batches": [sorted(int(i) for i in batch) for batch in batches],
            "ranks": [int(r) for r in ranks]
        }

    @property
    def n(self):
        return self.data["n"]

    @property
    def s0(self):
        return self.data["s0"]

    @property
    def batches(self):
        return self.data["batches"]

    @property
    def ranks(self):
        return self.data["ranks"]

    @property
    def l(self):  # noqa: E743
        return len(self.batches)

    def as_dict(self):
        return {
            "s0": list(self.s0),
            "batches": [list(b) for b in self.batches],
            "ranks": list(self.ranks)
        }

    def partition(self):
        """ The batches as a set of frozensets, for order-free comparison """
        return frozenset(frozenset(b) for b in self.batches)


    """ Validation rules """

    def rule_ranks_match_batches(self):
        assert len(self.ranks) == len(self.batches), "One rank is required per batch"

    def rule_batches_are_simplices(self):
        for batch, rank in zip(self.batches, self.ranks):
            assert len(batch) == rank + 1, f"Batch {batch} of rank {rank} is not a simplex batch"

    def rule_partitions_indices(self):
        indices = list(self.s0)
        for batch in self.batches:
            indices.extend(batch)
        assert sorted(indices) == list(range(self.n)), "s0 and batches do not partition the point indices"


class RattlerReport(OrthoplexType):
    def __init__(self, softmax, tammes):
        self.data = {
            "softmax": sorted(int(i) for i in softmax),
            "tammes": sorted(int(i) for i in tammes)
        }

    @property
    def softmax(self):
        return self.data["softmax"]

    @property
    def tammes(self):
        return self.data["tammes"]

    def __iter__(self):
        yield self.softmax
        yield self.tammes

    def __repr__(self):
        return f"{self.__class__.__qualname__}(softmax={self.softmax}, tammes={self.tammes})"
