from .warnings import OrthoplexWarning


class OrthoplexException(Exception):
    code = "error"

    def __init__(self, message):
        self.message = message

    def __str__(self):
        return self.message

    def __repr__(self):
        return f"{self.__class__.__qualname__}({self.message})"

    def as_dict(self):
        return {
            "error": self.code,
            "detail": self.message
        }


class OrthoplexArgumentError(OrthoplexException):
    code = "argument"


class OrthoplexDimensionError(OrthoplexException):
    code = "dimension"


class OrthoplexRegimeError(OrthoplexException):
    """ (d, n) lies outside d+2 <= n <= 2d """
    code = "regime"

    def __init__(self, d, n):
        super().__init__(f"(d={d}, n={n}) is outside the orthoplex regime d+2 <= n <= 2d")
        self.d = d
        self.n = n


class OrthoplexDomainError(OrthoplexException):
    code = "domain"


class OrthoplexNoPartitionError(OrthoplexException):
    code = "no-partition"


class OrthoplexNotASphericalCodeError(OrthoplexException):
    code = "not-a-spherical-code"


class OrthoplexDecompositionError(OrthoplexException):
    code = "decomposition-failure"


class OrthoplexSearchError(OrthoplexException):
    code = "search"


class OrthoplexDivergenceError(OrthoplexException):
    code = "divergence"

    def __init__(self, message, iteration):
        super().__init__(message)
        self.iteration = iteration

    def as_dict(self):
        ret = super().as_dict()
        ret["iteration"] = self.iteration
        return ret


class OrthoplexOracleScaleError(OrthoplexException):
    code = "oracle-scale"


class OrthoplexFormatError(OrthoplexException):
    code = "format"


class OrthoplexValidationError(OrthoplexException):
    code = "validation"
    desc_text = "[FAILURE]"

    def __init__(self, component, rule, exc, valuetext):
        self.component = component
        self.rule = rule
        self.exc = exc
        self.valuetext = valuetext
        self.message = f"{component} '{rule}' -> {exc}"

    def __str__(self):
        return f"{self.desc_text} {self.component} '{self.rule}' -> {self.exc}:\n          {self.valuetext}"

    def __repr__(self):
        return f"{self.__class__.__qualname__}({self.component}, {self.rule}, {self.exc})"

    def as_dict(self):
        return {
            "error": self.code,
            "detail": self.message,
            "component": self.component,
            "rule": self.rule,
            "value": self.valuetext
        }


class OrthoplexValidationErrorBundle(OrthoplexException):
    code = "validation"

    def __init__(self, message, bundle):
        self.message = message
        self.bundle = bundle

    @property
    def errors(self):
        return [exc for exc in self.bundle if isinstance(exc, OrthoplexException)]

    @property
    def warnings(self):
        return [exc for exc in self.bundle if isinstance(exc, OrthoplexWarning)]

    def __str__(self):
        details = "; ".join(err.message for err in self.errors)
        return f"{self.message}: {details}"

    def as_dict(self):
        return {
            "error": self.code,
            "detail": str(self),
            "failures": [err.as_dict() for err in self.errors]
        }
