import math

from .base import OrthoplexType
from .config import FeatureSet

STEP_RULES = ("armijo", "fixed")


class StepRule(OrthoplexType):
    """
    Step size policy for sphere descent. ``armijo`` backtracks by
    ``shrink`` until sufficient decrease, starting from ``step_size`` on
    the first iteration and from ``grow`` times the last accepted step,
    capped at ``max_step``, afterwards. ``fixed`` always takes
    ``step_size``.
    """
    def __init__(self, kind="armijo", step_size=1.0, armijo_c=1e-4, shrink=0.5, max_backtracks=60,
                 grow=2.0, max_step=1e8):
        self.data = {
            "kind": str(kind),
            "step_size": float(step_size),
            "armijo_c": float(armijo_c),
            "shrink": float(shrink),
            "max_backtracks": int(max_backtracks),
            "grow": float(grow),
            "max_step": float(max_step)
        }

    @property
    def kind(self):
        return self.data["kind"]

    @property
    def step_size(self):
        return self.data["step_size"]

    @property
    def armijo_c(self):
        return self.data["armijo_c"]

    @property
    def shrink(self):
        return self.data["shrink"]

    @property
    def max_backtracks(self):
        return self.data["max_backtracks"]

    @property
    def grow(self):
        return self.data["grow"]

    @property
    def max_step(self):
        return self.data["max_step"]


    """ Validation rules """

    def rule_known_kind(self):
        assert self.kind in STEP_RULES, f"Unknown step rule {self.kind!r}, expected one of {STEP_RULES}"

    def rule_step_nonnegative(self):
        assert self.step_size >= 0 and math.isfinite(self.step_size), "Step size must be finite and nonnegative"

    def rule_shrink_in_unit_interval(self):
        assert 0 < self.shrink < 1, "Backtracking shrink factor must lie in (0, 1)"

    def rule_growth_at_least_one(self):
        assert self.grow >= 1, "Step growth factor must be at least 1"

    def rule_max_step_covers_step_size(self):
        assert self.max_step >= self.step_size, "Largest step must not be below the initial step size"


class OptimizerState(OrthoplexType):
    def __init__(self, iterate, step, loss, grad_norm, history=None, converged=False, step_size=None):
        self.iterate = iterate
        self.data = {
            "step": int(step),
            "loss": float(loss),
            "grad_norm": float(grad_norm),
            "converged": bool(converged),
            "step_size": None if step_size is None else float(step_size),
            "history": [(float(f), float(g)) for f, g in (history or [])]
        }

    @property
    def step(self):
        return self.data["step"]

    @property
    def loss(self):
        return self.data["loss"]

    @property
    def grad_norm(self):
        return self.data["grad_norm"]

    @property
    def converged(self):
        return self.data["converged"]

    @property
    def step_size(self):
        """ Last accepted step length, ``None`` before the first step """
        return self.data["step_size"]

    @property
    def history(self):
        return self.data["history"]

    def summary(self):
        return {k: v for k, v in self.data.items() if k != "history"}


    """ Validation rules """

    def rule_iterate_is_feature_set(self):
        assert isinstance(self.iterate, FeatureSet), "Optimizer iterate must be a FeatureSet"

    def rule_finite_loss(self):
        assert math.isfinite(self.loss), "Optimizer loss is not finite"


class CollapseMetrics(OrthoplexType):
    """
    How far a feature set is from self-dual collapse onto the ideal
    low- and high-entropy codes.
    """
    def __init__(self, duality_gap, within_class_var, gram_error_low, gram_error_high,
                 gram_error_reference=None):
        self.data = {
            "duality_gap": float(duality_gap),
            "within_class_var": float(within_class_var),
            "gram_error_low": float(gram_error_low),
            "gram_error_high": float(gram_error_high),
            "gram_error_reference": None if gram_error_reference is None else float(gram_error_reference)
        }

    @property
    def duality_gap(self):
        return self.data["duality_gap"]

    @property
    def within_class_var(self):
        return self.data["within_class_var"]

    @property
    def gram_error_low(self):
        return self.data["gram_error_low"]

    @property
    def gram_error_high(self):
        return self.data["gram_error_high"]

    @property
    def gram_error_reference(self):
        return self.data["gram_error_reference"]


    """ Validation rules """

    def rule_nonnegative(self):
        values = [v for v in self.data.values() if v is not None]
        assert all(v >= 0 for v in values), "Collapse metrics must be nonnegative"

    def rule_duality_gap_bounded(self):
        assert self.duality_gap <= 2 + 1e-12, "Distance between unit vectors cannot exceed 2"
