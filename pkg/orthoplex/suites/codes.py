import numpy as np

from orthoplex.codes import (
    build_entropy_code,
    build_orthoplex_subset,
    build_simplex,
    high_entropy_tuple,
    low_entropy_tuple,
    regime_pairs
)
from orthoplex.geometry import coherence
from orthoplex.types.exceptions import OrthoplexDimensionError

__key__ = "codes"
__suite_name__ = "Code Construction"
__version__ = "0.1.0"
__description__ = """
Regular simplices, orthoplex subsets and entropy codes have the Gram
structure their definitions require.
"""


def check_simplex_gram():
    for q in range(2, 7):
        for d in (q - 1, q + 1):
            simplex = build_simplex(q, d)
            off = simplex.gram()[~np.eye(q, dtype=bool)]
            assert np.allclose(off, -1.0 / (q - 1), atol=1e-12), f"Simplex ({q}, {d}) Gram is not -1/{q - 1}"
            assert np.allclose(simplex.vectors.sum(axis=0), 0.0, atol=1e-12), f"Simplex ({q}, {d}) is not centred"


def check_oversized_simplex_rejected():
    try:
        build_simplex(4, 2)
    except OrthoplexDimensionError:
        return
    raise AssertionError("A 4-point simplex in R^2 was not rejected")


def check_orthoplex_subsets_zero_coherence():
    for d, n in regime_pairs(range(2, 9)):
        alpha = coherence(build_orthoplex_subset(d, n))
        assert alpha == 0.0, f"Orthoplex subset ({d}, {n}) has coherence {alpha}"


def check_entropy_tuples():
    assert low_entropy_tuple(4, 6) == (3, 1)
    assert high_entropy_tuple(4, 6) == (2, 2)
    assert high_entropy_tuple(7, 10) == (3, 2, 2)
    assert low_entropy_tuple(6, 10) == (3, 1, 1, 1)


def check_entropy_codes_zero_coherence():
    for d, n in regime_pairs(range(2, 9)):
        for kind in ("low", "high"):
            code, dims = build_entropy_code(d, n, kind)
            assert (code.d, code.n) == (d, n), f"{kind} code for ({d}, {n}) has shape ({code.d}, {code.n})"
            alpha = coherence(code)
            assert abs(alpha) <= 1e-12, f"{kind} code {dims} has coherence {alpha:.3e}"
