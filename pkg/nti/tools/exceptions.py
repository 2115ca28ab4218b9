"""NTI.py-specific exceptions."""


class UserExitRequest(Exception):
    """Exception that the caller can use to request clean exit."""

    pass


class ShapeError(ValueError):
    """Error that can be raised to signal a dimension mismatch."""

    pass


class TopologyError(ValueError):
    """Error raised when a tree cannot be built over the given leaves."""

    pass


class ConfigError(ValueError):
    """Error that signals an invalid or inconsistent configuration."""

    pass


class DataFormatError(ValueError):
    """Error raised by dataset and embedding readers on malformed input."""

    def __init__(self, msg, path=None, lineno=None):
        where = ""
        if path is not None:
            where = "%s" % path
        if lineno is not None:
            where += ":%d" % lineno
        if where:
            msg = "%s: %s" % (where, msg)
        super(DataFormatError, self).__init__(msg)
        self.path = path
        self.lineno = lineno


class NonFiniteValueError(ArithmeticError):
    """Error raised when a function value is NaN or infinite."""

    pass


class NonFiniteGradientError(ArithmeticError):
    """Error raised when a gradient component is NaN or infinite."""

    def __init__(self, name):
        super(NonFiniteGradientError, self).__init__(
            "non-finite gradient for parameter %s" % name)
        self.name = name


class TrainingDivergence(ArithmeticError):
    """Exception raised when the training loss becomes NaN or infinite."""

    pass


class CheckpointError(IOError):
    """Error raised for corrupt, mismatched or unsupported checkpoints."""

    pass
