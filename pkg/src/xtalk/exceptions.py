"""Exception hierarchy shared by every stage of the compiler."""


class XtalkError(Exception):
    """Base class for all errors raised by xtalk."""


class InvalidArgument(XtalkError, ValueError):
    pass


class ParseError(XtalkError, ValueError):
    """Malformed circuit text. ``line`` is 1-based."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"{message}, line {line}"
        super().__init__(message)


class RoutingError(XtalkError):
    pass


class PreconditionError(XtalkError):
    pass


class UnsupportedTopology(XtalkError):
    pass


class ResonanceError(XtalkError, ValueError):
    """Raised when a residual coupling is requested at zero detuning."""


class StageError(XtalkError):
    """A pipeline stage failed; ``stage`` names it."""

    def __init__(self, stage, cause):
        self.stage = stage
        self.cause = cause
        super().__init__(f"{stage} failed: {cause}")
