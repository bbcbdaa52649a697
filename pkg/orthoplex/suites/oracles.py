import numpy as np

from orthoplex.codes import build_simplex, random_config, regime_pairs
from orthoplex.geometry import hull_distance
from orthoplex.oracles import (
    compare,
    fd_gradient,
    hull_distance_oracle,
    tuple_argmin_oracle
)
from orthoplex.optimizer import random_init
from orthoplex.temperature import optimal_tuple

__key__ = "oracles"
__suite_name__ = "Solver Oracles"
__version__ = "0.1.0"
__description__ = """
The hull distance solver and the discrete tuple optimiser agree with
independent brute-force references.
"""

HULL_TOL = 1e-6
RANDOM_HULLS = 12
SAMPLED_TAUS = np.geomspace(0.1, 3.0, 64)


def check_hull_distance_examples():
    triangle = build_simplex(3, 2).vectors
    square = np.array([[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]])
    cases = [
        ("triangle", triangle[0], triangle[1:], 1.5),
        ("square", square[0], square[1:], 1.0),
        ("singleton", square[0], square[1:2], np.sqrt(2.0))
    ]
    for name, query, generators, expected in cases:
        solver = hull_distance(query, generators).distance
        oracle = hull_distance_oracle(query, generators)
        assert abs(solver - expected) <= HULL_TOL, f"{name}: solver {solver!r}"
        assert compare(name, oracle, solver).agrees(atol=HULL_TOL), f"{name}: oracle {oracle!r}"


def check_random_hull_instances():
    for seed in range(RANDOM_HULLS):
        k = 2 + seed % 4
        generators = random_config(3, k, seed=seed).vectors
        query = random_config(3, 1, seed=1000 + seed).vectors[0]
        report = compare(f"seed {seed}, k={k}", hull_distance_oracle(query, generators),
                         hull_distance(query, generators).distance)
        assert report.agrees(atol=HULL_TOL), f"{report.instance}: deviation {report.abs_deviation:.3e}"


def check_tuple_argmin_agreement():
    for d, n in regime_pairs(range(2, 13)):
        for tau in SAMPLED_TAUS:
            solver, _ = optimal_tuple(d, n, tau)
            oracle = tuple_argmin_oracle(d, n, tau)
            assert solver == oracle, f"(d={d}, n={n}, tau={tau:.4f}): {solver} != {oracle}"


def check_constant_function_gradient():
    grad = fd_gradient(lambda w, h: 3.0, random_init(2, 3, 1, seed=5))
    assert np.max(np.abs(grad.d_weights)) <= 1e-9 and np.max(np.abs(grad.d_features)) <= 1e-9
