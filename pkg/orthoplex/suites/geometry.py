import numpy as np

from orthoplex.codes import (
    build_entropy_code,
    build_orthoplex_subset,
    planar_config,
    random_config,
    regime_pairs
)
from orthoplex.geometry import (
    coherence,
    find_rattlers,
    hull_distance,
    margin,
    orthoplex_decompose,
    radon_partition
)

__key__ = "geometry"
__suite_name__ = "Convex Geometry"
__version__ = "0.1.0"
__description__ = """
Zero-coherence codes have unit margin and no rattlers, other
configurations in the regime have margin below one, and Radon
partitions certify their common point.
"""

RANDOM_CONFIGS = 1000
RADON_CONFIGS = 500
CODE_DIMS = range(2, 9)
RANDOM_DIMS = range(2, 7)


def _zero_coherence_codes(dims):
    for d, n in regime_pairs(dims):
        yield f"orthoplex({d}, {n})", build_orthoplex_subset(d, n)
        for kind in ("low", "high"):
            code, parts = build_entropy_code(d, n, kind)
            yield f"{kind}({parts})", code


def _random_regime_configs(count):
    pairs = regime_pairs(RANDOM_DIMS)
    for seed in range(count):
        d, n = pairs[seed % len(pairs)]
        yield seed, random_config(d, n, seed=seed)


def check_zero_coherence_margin_is_one():
    for name, code in _zero_coherence_codes(CODE_DIMS):
        delta, _ = margin(code)
        assert abs(delta - 1.0) <= 1e-8, f"{name} has margin {delta:.12f}"


def check_random_margin_below_one():
    for seed, config in _random_regime_configs(RANDOM_CONFIGS):
        if coherence(config) < 1e-3:
            continue
        delta, _ = margin(config)
        assert delta < 1.0, f"Random config seed {seed} has margin {delta:.12f}"


def check_radon_certificates():
    for seed, config in _random_regime_configs(RADON_CONFIGS):
        part = radon_partition(config)
        for side in part.sides():
            dist = hull_distance(part.radon_point, config.vectors[list(side)]).distance
            assert dist <= 1e-8, f"Radon point of seed {seed} is {dist:.3e} from side {side}"


def check_planar_tammes_rattlers():
    report = find_rattlers(planar_config([0, 90, 180, 300]))
    assert list(report.tammes) == [1, 2], f"Tammes rattlers {report.tammes}"


def check_zero_coherence_codes_rattler_free():
    for name, code in _zero_coherence_codes(CODE_DIMS):
        softmax, tammes = find_rattlers(code)
        assert len(softmax) == 0 and len(tammes) == 0, f"{name} has rattlers {softmax}, {tammes}"


def check_decomposition_batches():
    for name, code in _zero_coherence_codes(CODE_DIMS):
        decomp = orthoplex_decompose(code)
        assert decomp.l >= code.n - code.d, f"{name} decomposed into {decomp.l} batches"
    decomp = orthoplex_decompose(build_orthoplex_subset(3, 5))
    assert decomp.s0 == [4] and decomp.batches == [[0, 1], [2, 3]], f"Unexpected decomposition {decomp.as_dict()}"
