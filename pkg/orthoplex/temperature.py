"""
Which dimension tuple minimises the self-dual cross-entropy at a given
temperature: tuple enumeration, the exhaustive discrete optimum,
crossover location by grid bracketing and bisection, and the
temperatures at which ``f`` becomes concave or convex.
"""
import logging

import numpy as np
import scipy.optimize

from orthoplex.codes import check_regime
from orthoplex.losses import check_tau, f_curvature, selfdual_closed_curve
from orthoplex.types.dimtuple import DimensionTuple
from orthoplex.types.exceptions import (
    OrthoplexArgumentError,
    OrthoplexSearchError
)
from orthoplex.types.sweep import Crossover, SweepReport
from orthoplex.utils import parallel_map

log = logging.getLogger(__name__)

CROSSOVER_GRID = 512
THRESHOLD_GRID = 2048
SEARCH_BOUNDS = (1e-3, 1e3)
SEARCH_TOL = 1e-5
# Each bisected root lies within tol / BISECT_SHARE of the true one
BISECT_SHARE = 4


def _partitions(total, slots, largest):
    if slots == 1:
        if 1 <= total <= largest:
            yield (total,)
        return

    for first in range(min(largest, total - (slots - 1)), 0, -1):
        if first * slots < total:
            break
        for rest in _partitions(total - first, slots - 1, first):
            yield (first,) + rest


def enumerate_tuples(d, l):  # noqa: E741
    """
    Every partition of ``d`` into exactly ``l`` positive non-increasing
    parts, in reverse-lexicographic order.
    """
    d, l = int(d), int(l)  # noqa: E741
    if not 1 <= l <= d:
        raise OrthoplexArgumentError(f"Number of parts must satisfy 1 <= l <= d, received d={d}, l={l}")

    return [DimensionTuple(p) for p in _partitions(d, l, d)]


def optimal_tuple(d, n, tau):
    """
    Exhaustive minimum of the closed-form self-dual loss over all
    tuples for ``(d, n)``. Ties go to the earlier tuple.

    Returns:
        tuple, loss (:class:`Tuple[DimensionTuple, float]`)
    """
    d, n = int(d), int(n)
    check_regime(d, n)
    tau = check_tau(tau)

    tuples = enumerate_tuples(d, n - d)
    losses = [float(selfdual_closed_curve(t, n, [tau])[0]) for t in tuples]
    best = min(range(len(tuples)), key=lambda i: (losses[i], i))
    return tuples[best], losses[best]


def loss_table(tuples, n, taus):
    """ ``len(taus) x len(tuples)`` array of closed-form losses """
    columns = parallel_map(lambda t: selfdual_closed_curve(t, n, taus), tuples)
    return np.column_stack(columns)


def _argmins(table):
    # np.argmin returns the first index on ties
    return np.argmin(table, axis=1)


def crossover_scan(d, n, tau_lo, tau_hi, tol=SEARCH_TOL, grid=CROSSOVER_GRID, thresholds=True) -> SweepReport:
    """
    Locates every temperature in ``[tau_lo, tau_hi]`` at which the
    optimal tuple changes.

    The losses of all tuples are tabulated on a grid of ``grid`` points,
    and each change of argmin between adjacent grid points is refined by
    bisecting the loss difference of the two tuples involved.

    Args:
        d (int): Ambient dimension
        n (int): Number of classes, ``d+2 <= n <= 2d``
        tau_lo (float): Lower end of the temperature range
        tau_hi (float): Upper end of the temperature range
        tol (float): Absolute tolerance on each crossover temperature
        grid (int): Number of bracketing grid points
        thresholds (bool): Also locate the concavity and convexity thresholds

    Returns:
        :class:`SweepReport`
    """
    d, n = int(d), int(n)
    check_regime(d, n)
    tau_lo, tau_hi = check_tau(tau_lo), check_tau(tau_hi)
    if not tau_lo < tau_hi:
        raise OrthoplexArgumentError(f"Temperature range is empty: tau_lo={tau_lo} >= tau_hi={tau_hi}")
    if not tol > 0:
        raise OrthoplexArgumentError(f"Tolerance must be positive, received tol={tol!r}")
    if int(grid) < 2:
        raise OrthoplexArgumentError(f"A bracketing grid needs at least 2 points, received grid={grid}")

    tuples = enumerate_tuples(d, n - d)
    taus = np.linspace(tau_lo, tau_hi, int(grid))
    table = loss_table(tuples, n, taus)
    argmins = _argmins(table)

    crossovers = []
    for i in np.flatnonzero(argmins[1:] != argmins[:-1]):
        below, above = tuples[argmins[i]], tuples[argmins[i + 1]]

        def difference(tau):
            return float(selfdual_closed_curve(below, n, [tau])[0] - selfdual_closed_curve(above, n, [tau])[0])

        lo, hi = taus[i], taus[i + 1]
        if difference(lo) == 0.0:
            root = lo
        elif difference(hi) == 0.0:
            root = hi
        else:
            root = scipy.optimize.bisect(difference, lo, hi, xtol=tol / BISECT_SHARE)
        log.debug(f"Crossover {below.as_string()} -> {above.as_string()} at tau={root:.6f}")
        crossovers.append(Crossover(root, below, above))

    concave = convex = None
    if thresholds:
        concave = concavity_threshold(n, tol=tol)
        convex = convexity_threshold(n, tol=tol)

    return SweepReport(n, d, taus, tuples, table, crossovers, concave, convex)


def _curvature_extreme(n, xs, reduce):
    def extreme(tau):
        return float(reduce(f_curvature(n, tau, xs)))
    return extreme


def _threshold(n, tol, grid, reduce, kind):
    n = int(n)
    if n < 3:
        raise OrthoplexArgumentError(f"Thresholds are defined for n >= 3, received n={n}")

    xs = np.linspace(1.0, n - 1.0, int(grid))
    extreme = _curvature_extreme(n, xs, reduce)
    lo, hi = SEARCH_BOUNDS
    at_lo, at_hi = extreme(lo), extreme(hi)
    if not (at_lo < 0 < at_hi):
        raise OrthoplexSearchError(f"No {kind} threshold bracketed in [{lo}, {hi}] for n={n}: "
                                   f"curvature extremes {at_lo:.3e}, {at_hi:.3e}")

    root = scipy.optimize.bisect(extreme, lo, hi, xtol=tol / BISECT_SHARE)
    log.debug(f"{kind.capitalize()} threshold for n={n}: {root:.6f}")
    return float(root)


def concavity_threshold(n, tol=SEARCH_TOL, grid=THRESHOLD_GRID) -> float:
    """ Largest temperature at which ``f'' < 0`` at every grid point of ``[1, n-1]`` """
    return _threshold(n, tol, grid, np.max, "concavity")


def convexity_threshold(n, tol=SEARCH_TOL, grid=THRESHOLD_GRID) -> float:
    """ Smallest temperature at which ``f'' > 0`` at every grid point of ``[1, n-1]`` """
    return _threshold(n, tol, grid, np.min, "convexity")


def classify_temperature(n, tau, grid=THRESHOLD_GRID) -> str:
    n = int(n)
    if n < 3:
        raise OrthoplexArgumentError(f"Curvature is defined for n >= 3, received n={n}")
    q = f_curvature(n, tau, np.linspace(1.0, n - 1.0, int(grid)))
    if np.all(q < 0):
        return "concave"
    if np.all(q > 0):
        return "convex"
    return "mixed"
