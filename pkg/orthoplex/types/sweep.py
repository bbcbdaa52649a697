import math

from .base import OrthoplexType
from .dimtuple import DimensionTuple


class Crossover(OrthoplexType):
    """ A temperature at which the loss-minimising tuple changes """
    def __init__(self, tau, tuple_below, tuple_above):
        self.tuple_below = DimensionTuple(tuple_below)
        self.tuple_above = DimensionTuple(tuple_above)
        self.data = {
            "tau": float(tau),
            "from": self.tuple_below.as_string(),
            "to": self.tuple_above.as_string()
        }

    @property
    def tau(self):
        return self.data["tau"]

    def __repr__(self):
        return f"{self.__class__.__qualname__}({self.tau:.6f}: {self.data['from']} -> {self.data['to']})"


    """ Validation rules """

    def rule_tau_positive(self):
        assert self.tau > 0 and math.isfinite(self.tau), "Crossover temperature must be positive"

    def rule_tuples_differ(self):
        assert self.tuple_below != self.tuple_above, "Crossover between identical tuples"


class SweepReport(OrthoplexType):
    """
    Losses of every dimension tuple over a temperature grid together
    with the located crossovers and the curvature thresholds of ``f``.
    """
    def __init__(self, n, d, tau_grid, tuples, losses, crossovers,
                 concavity_threshold=None, convexity_threshold=None):
        self.tuples = [DimensionTuple(t) for t in tuples]
        argmins = []
        per_tau = []
        for tau, row in zip(tau_grid, losses):
            best = min(range(len(row)), key=lambda i: (row[i], i))
            argmins.append(self.tuples[best])
            per_tau.append({
                "tau": float(tau),
                "losses": {t.as_string(): float(v) for t, v in zip(self.tuples, row)},
                "argmin": self.tuples[best].as_string()
            })
        self.argmins = argmins
        self.data = {
            "n": int(n),
            "d": int(d),
            "tau_grid": [float(t) for t in tau_grid],
            "per_tau": per_tau,
            "crossovers": list(crossovers),
            "concavity_threshold": concavity_threshold,
            "convexity_threshold": convexity_threshold
        }

    @property
    def n(self):
        return self.data["n"]

    @property
    def d(self):
        return self.data["d"]

    @property
    def tau_grid(self):
        return self.data["tau_grid"]

    @property
    def per_tau(self):
        return self.data["per_tau"]

    @property
    def crossovers(self):
        return self.data["crossovers"]

    @property
    def concavity_threshold(self):
        return self.data["concavity_threshold"]

    @property
    def convexity_threshold(self):
        return self.data["convexity_threshold"]

    def tuple_sequence(self):
        """ Distinct argmin tuples in order of increasing temperature """
        seq = []
        for t in self.argmins:
            if not seq or seq[-1] != t:
                seq.append(t)
        return seq

    def threshold_report(self):
        return {
            "n": self.n,
            "concavity": self.concavity_threshold,
            "convexity": self.convexity_threshold,
            "crossovers": [c.as_dict() for c in self.crossovers]
        }


    """ Validation rules """

    def rule_crossovers_sorted(self):
        taus = [c.tau for c in self.crossovers]
        assert taus == sorted(taus), "Crossovers are not in ascending temperature order"

    def rule_grid_sorted(self):
        grid = self.tau_grid
        assert all(a < b for a, b in zip(grid, grid[1:])), "Temperature grid is not strictly increasing"

    def rule_thresholds_ordered(self):
        lo, hi = self.concavity_threshold, self.convexity_threshold
        if lo is not None and hi is not None:
            assert lo < hi, "Concavity threshold must lie below the convexity threshold"
