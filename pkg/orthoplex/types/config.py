import json

import numpy as np

from .base import OrthoplexType
from .exceptions import OrthoplexFormatError

UNIT_TOL = 1e-12


def _frozen(array):
    array = np.array(array, dtype=float)
    array.flags.writeable = False
    return array


class SphericalConfig(OrthoplexType):
    """
    An ordered configuration of ``n`` unit vectors in ``R^d``.

    Rows are checked against the unit sphere to within ``unit_tol``
    on construction but never silently re-normalised; use
    :meth:`SphericalConfig.normalized` for that.
    """
    def __init__(self, vectors, unit_tol=UNIT_TOL):
        self.unit_tol = float(unit_tol)
        vectors = _frozen(vectors)
        shape = vectors.shape
        self.data = {
            "d": int(shape[1]) if vectors.ndim == 2 else 0,
            "n": int(shape[0]) if vectors.ndim >= 1 else 0,
            "vectors": vectors
        }

    @classmethod
    def normalized(cls, vectors, unit_tol=UNIT_TOL):
        """
        Returns the configuration formed by scaling each row of
        ``vectors`` to unit length.
        """
        vectors = np.array(vectors, dtype=float)
        norms = np.linalg.norm(vectors, axis=-1, keepdims=True)
        return cls(vectors / norms, unit_tol=unit_tol)

    @classmethod
    def from_dict(cls, src, unit_tol=UNIT_TOL):
        try:
            vectors = np.array(src["vectors"], dtype=float)
            d, n = int(src["d"]), int(src["n"])
        except (KeyError, TypeError, ValueError) as err:
            raise OrthoplexFormatError(f"Invalid configuration document: {err}")

        if vectors.ndim != 2 or vectors.shape != (n, d):
            raise OrthoplexFormatError(f"Configuration declares n={n}, d={d} but vectors have shape {vectors.shape}")

        return cls(vectors, unit_tol=unit_tol)

    @classmethod
    def from_json(cls, json_src, unit_tol=UNIT_TOL):
        try:
            src = json.loads(json_src)
        except json.decoder.JSONDecodeError as err:
            raise OrthoplexFormatError(f"Invalid JSON document: {str(err)}")

        return cls.from_dict(src, unit_tol=unit_tol)

    @classmethod
    def from_file(cls, filename, unit_tol=UNIT_TOL):
        try:
            with open(filename, 'r') as fp:
                json_src = fp.read()
        except OSError as err:
            raise OrthoplexFormatError(f"Unable to read input file: {err}")

        return cls.from_json(json_src, unit_tol=unit_tol)

    @property
    def d(self):
        return self.data["d"]

    @property
    def n(self):
        return self.data["n"]

    @property
    def vectors(self):
        return self.data["vectors"]

    @property
    def in_orthoplex_regime(self):
        return self.d + 2 <= self.n <= 2 * self.d

    def gram(self):
        return self.vectors @ self.vectors.T

    def subset(self, indices):
        """ The configuration restricted to ``indices``, in the order given """
        return SphericalConfig(self.vectors[list(indices)], unit_tol=self.unit_tol)

    def without(self, index):
        keep = [i for i in range(self.n) if i != index]
        return self.subset(keep)

    def __len__(self):
        return self.n

    def __getitem__(self, idx):
        return self.vectors[idx]

    def __eq__(self, other):
        if not isinstance(other, SphericalConfig):
            return NotImplemented
        return self.vectors.shape == other.vectors.shape and bool(np.all(self.vectors == other.vectors))

    __hash__ = None

    def __repr__(self):
        return f"{self.__class__.__qualname__}(d={self.d}, n={self.n})"


    """ Validation rules """

    def rule_vectors_form_matrix(self):
        assert self.vectors.ndim == 2, f"Expected an n x d array, received {self.vectors.ndim} dimension(s)"

    def rule_at_least_one_point(self):
        assert self.n >= 1 and self.d >= 1, "Configuration must contain at least one point in dimension >= 1"

    def rule_finite_coordinates(self):
        assert np.all(np.isfinite(self.vectors)), "Configuration contains non-finite coordinates"

    def rule_unit_norm(self):
        if self.vectors.ndim == 2 and self.vectors.size:
            deviation = np.max(np.abs(np.linalg.norm(self.vectors, axis=1) - 1.0))
            assert deviation <= self.unit_tol, f"Row norm deviates from 1 by {deviation:.3e} > {self.unit_tol:.1e}"

    def warn_in_orthoplex_regime(self):
        assert self.in_orthoplex_regime, f"(d={self.d}, n={self.n}) lies outside the orthoplex regime"


class FeatureSet(OrthoplexType):
    """
    Class weights ``W`` paired with ``m`` unit feature vectors per class.
    """
    def __init__(self, weights, features, unit_tol=UNIT_TOL):
        if not isinstance(weights, SphericalConfig):
            weights = SphericalConfig(weights, unit_tol=unit_tol)
        self.unit_tol = float(unit_tol)
        self.weights = weights
        features = _frozen(features)
        self.data = {
            "d": weights.d,
            "n": weights.n,
            "m": int(features.shape[1]) if features.ndim == 3 else 0,
            "vectors": weights.vectors,
            "features": features
        }

    @classmethod
    def selfdual(cls, weights, m=1):
        """ The feature set with ``h_{k,i} = w_k`` for every ``i`` """
        if not isinstance(weights, SphericalConfig):
            weights = SphericalConfig(weights)
        features = np.repeat(weights.vectors[:, np.newaxis, :], int(m), axis=1)
        return cls(weights, features, unit_tol=weights.unit_tol)

    @classmethod
    def normalized(cls, weights, features, unit_tol=UNIT_TOL):
        features = np.array(features, dtype=float)
        features = features / np.linalg.norm(features, axis=-1, keepdims=True)
        return cls(SphericalConfig.normalized(weights, unit_tol=unit_tol), features, unit_tol=unit_tol)

    @classmethod
    def from_dict(cls, src, unit_tol=UNIT_TOL):
        weights = SphericalConfig.from_dict(src, unit_tol=unit_tol)
        try:
            features = np.array(src["features"], dtype=float)
            m = int(src["m"])
        except (KeyError, TypeError, ValueError) as err:
            raise OrthoplexFormatError(f"Invalid feature set document: {err}")

        if features.shape != (weights.n, m, weights.d):
            raise OrthoplexFormatError(f"Feature set declares m={m} but features have shape {features.shape}")

        return cls(weights, features, unit_tol=unit_tol)

    @classmethod
    def from_json(cls, json_src, unit_tol=UNIT_TOL):
        try:
            src = json.loads(json_src)
        except json.decoder.JSONDecodeError as err:
            raise OrthoplexFormatError(f"Invalid JSON document: {str(err)}")

        return cls.from_dict(src, unit_tol=unit_tol)

    @classmethod
    def from_file(cls, filename, unit_tol=UNIT_TOL):
        try:
            with open(filename, 'r') as fp:
                json_src = fp.read()
        except OSError as err:
            raise OrthoplexFormatError(f"Unable to read input file: {err}")

        return cls.from_json(json_src, unit_tol=unit_tol)

    @property
    def d(self):
        return self.data["d"]

    @property
    def n(self):
        return self.data["n"]

    @property
    def m(self):
        return self.data["m"]

    @property
    def features(self):
        return self.data["features"]

    def __repr__(self):
        return f"{self.__class__.__qualname__}(d={self.d}, n={self.n}, m={self.m})"


    """ Validation rules """

    def rule_features_form_array(self):
        assert self.features.ndim == 3, f"Expected an n x m x d array, received {self.features.ndim} dimension(s)"

    def rule_features_match_weights(self):
        if self.features.ndim == 3:
            n, m, d = self.features.shape
            assert (n, d) == (self.n, self.d), f"Features of shape {self.features.shape} do not match n={self.n}, d={self.d}"
            assert m >= 1, "At least one feature per class is required"

    def rule_finite_features(self):
        assert np.all(np.isfinite(self.features)), "Features contain non-finite coordinates"

    def rule_unit_norm_features(self):
        if self.features.ndim == 3 and self.features.size:
            deviation = np.max(np.abs(np.linalg.norm(self.features, axis=-1) - 1.0))
            assert deviation <= self.unit_tol, f"Feature norm deviates from 1 by {deviation:.3e} > {self.unit_tol:.1e}"
