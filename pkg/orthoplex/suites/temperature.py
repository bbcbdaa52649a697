import numpy as np

from orthoplex.losses import f_eval
from orthoplex.temperature import (
    concavity_threshold,
    convexity_threshold,
    crossover_scan,
    enumerate_tuples,
    optimal_tuple
)

__key__ = "temperature"
__suite_name__ = "Temperature Analysis"
__version__ = "0.1.0"
__description__ = """
Curvature thresholds and crossover temperatures for n=10, their
stability under grid refinement, exchange monotonicity of the sum of f,
and low/high-entropy selection on either side of the thresholds.
"""

THRESHOLD_TOL = 5e-4
EXCHANGE_DIMS = range(2, 13)


def _near(value, target):
    return abs(value - target) <= THRESHOLD_TOL


def check_enumeration():
    assert enumerate_tuples(6, 4) == [(3, 1, 1, 1), (2, 2, 1, 1)]
    assert enumerate_tuples(8, 2) == [(7, 1), (6, 2), (5, 3), (4, 4)]
    assert enumerate_tuples(5, 5) == [(1, 1, 1, 1, 1)]


def check_thresholds_n10():
    concave, convex = concavity_threshold(10), convexity_threshold(10)
    assert _near(concave, 0.3916), f"Concavity threshold {concave:.6f}"
    assert _near(convex, 0.5847), f"Convexity threshold {convex:.6f}"


def check_crossovers_d6():
    report = crossover_scan(6, 10, 0.36, 0.61, thresholds=False)
    assert [c.tau for c in report.crossovers] and len(report.crossovers) == 1
    assert _near(report.crossovers[0].tau, 0.4968)
    assert report.tuple_sequence() == [(3, 1, 1, 1), (2, 2, 1, 1)]


def check_crossovers_d7():
    report = crossover_scan(7, 10, 0.36, 0.61, thresholds=False)
    taus = [c.tau for c in report.crossovers]
    assert len(taus) == 2 and _near(taus[0], 0.4713) and _near(taus[1], 0.4968), f"Crossovers {taus}"
    assert report.tuple_sequence() == [(5, 1, 1), (3, 3, 1), (3, 2, 2)]


def check_crossovers_d8():
    report = crossover_scan(8, 10, 0.36, 0.61, thresholds=False)
    assert len(report.crossovers) == 1 and _near(report.crossovers[0].tau, 0.4588)
    assert report.tuple_sequence() == [(7, 1), (4, 4)]


def check_entropy_selection():
    for n in range(5, 17):
        low_tau = 0.5 * concavity_threshold(n)
        high_tau = 2.0 * convexity_threshold(n)
        for d in range((n + 1) // 2, n - 1):
            low, _ = optimal_tuple(d, n, low_tau)
            high, _ = optimal_tuple(d, n, high_tau)
            assert low.is_low_entropy, f"(d={d}, n={n}) at tau={low_tau:.4f} selects {low}"
            assert high.is_high_entropy, f"(d={d}, n={n}) at tau={high_tau:.4f} selects {high}"


def check_crossovers_grid_refinement():
    for d in (6, 7, 8):
        coarse = crossover_scan(d, 10, 0.36, 0.61, grid=512, thresholds=False)
        fine = crossover_scan(d, 10, 0.36, 0.61, grid=2048, thresholds=False)
        assert coarse.tuple_sequence() == fine.tuple_sequence(), f"d={d}: sequences differ"
        for a, b in zip(coarse.crossovers, fine.crossovers):
            assert abs(a.tau - b.tau) <= 1e-5, f"d={d}: {a.tau:.8f} vs {b.tau:.8f}"


def check_thresholds_finer_grid():
    for threshold in (concavity_threshold, convexity_threshold):
        coarse, fine = threshold(10), threshold(10, grid=8192)
        assert abs(coarse - fine) <= 1e-4, f"{threshold.__name__}: {coarse:.6f} vs {fine:.6f}"


def _sum_f(n, tau, parts):
    return float(np.sum(f_eval(n, tau, np.asarray(parts, dtype=float))))


def check_exchange_monotonicity():
    for d in EXCHANGE_DIMS:
        for n in range(d + 2, 2 * d + 1):
            concave_tau = convex_tau = None
            for dims in enumerate_tuples(d, n - d):
                parts = list(dims.parts)
                if parts[1] >= 2:
                    concave_tau = concave_tau or 0.8 * concavity_threshold(n)
                    moved = [parts[0] + 1, parts[1] - 1] + parts[2:]
                    assert _sum_f(n, concave_tau, moved) < _sum_f(n, concave_tau, parts), f"{dims} at n={n}"
                if parts[0] - parts[-1] >= 2:
                    convex_tau = convex_tau or 1.25 * convexity_threshold(n)
                    moved = [parts[0] - 1] + parts[1:-1] + [parts[-1] + 1]
                    assert _sum_f(n, convex_tau, moved) < _sum_f(n, convex_tau, parts), f"{dims} at n={n}"
