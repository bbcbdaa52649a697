import os

import pytest

from orthoplex.codes import (
    build_entropy_code,
    build_orthoplex_subset,
    planar_config
)
from orthoplex.types.config import FeatureSet

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")


@pytest.fixture
def square_file():
    return os.path.join(DATA_DIR, "square.json")


@pytest.fixture
def orthoplex_3_5_file():
    return os.path.join(DATA_DIR, "orthoplex_3_5.json")


@pytest.fixture
def nonunit_file():
    return os.path.join(DATA_DIR, "nonunit_config.json")


@pytest.fixture
def square_features_file():
    return os.path.join(DATA_DIR, "square_features.json")


@pytest.fixture
def square_permuted_file():
    return os.path.join(DATA_DIR, "square_permuted.json")


@pytest.fixture
def square():
    return build_orthoplex_subset(2, 4)


@pytest.fixture
def square_selfdual(square):
    return FeatureSet.selfdual(square)


@pytest.fixture
def orthoplex_3_5():
    return build_orthoplex_subset(3, 5)


@pytest.fixture
def low_code():
    """ The (4, 6) low-entropy code, a tetrahedron plus an antipodal pair """
    code, _ = build_entropy_code(4, 6, "low")
    return code


@pytest.fixture
def high_code():
    code, _ = build_entropy_code(4, 6, "high")
    return code


@pytest.fixture
def planar_rattlers():
    return planar_config([0, 90, 180, 300])
