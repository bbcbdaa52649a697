import math

from .base import OrthoplexType


class OracleReport(OrthoplexType):
    """ Agreement between an independent reference value and a solver value """
    def __init__(self, instance, oracle_value, solver_value):
        oracle_value = float(oracle_value)
        solver_value = float(solver_value)
        deviation = abs(oracle_value - solver_value)
        scale = max(abs(oracle_value), abs(solver_value))
        self.data = {
            "instance": str(instance),
            "oracle": oracle_value,
            "solver": solver_value,
            "abs_deviation": deviation,
            "rel_deviation": deviation / scale if scale > 0 else 0.0
        }

    @property
    def instance(self):
        return self.data["instance"]

    @property
    def abs_deviation(self):
        return self.data["abs_deviation"]

    @property
    def rel_deviation(self):
        return self.data["rel_deviation"]

    def agrees(self, atol=0.0, rtol=0.0):
        return self.abs_deviation <= atol or self.rel_deviation <= rtol


    """ Validation rules """

    def rule_values_finite(self):
        assert math.isfinite(self.data["oracle"]) and math.isfinite(self.data["solver"]), "Oracle report values must be finite"
