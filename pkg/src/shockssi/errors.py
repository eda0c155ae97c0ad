"""Exception hierarchy.

Every error raised on purpose by the package derives from :class:`ShockError`
and carries an ``exit_code`` used by the command-line front end.
"""


class ShockError(Exception):
    exit_code = 2


class ParameterError(ShockError, ValueError):
    pass


class ParseError(ShockError, ValueError):
    pass


class EmptyInput(ParseError):
    pass


class SamplingError(ShockError, ValueError):
    pass


class ResolutionError(ParameterError):
    pass


class AliasError(ParameterError):
    pass


class RangeError(ShockError, ValueError):
    pass


class GridError(ShockError, ValueError):
    pass


class IoError(ShockError, OSError):
    pass


class DegenerateInput(ShockError, ValueError):
    exit_code = 3


class BoundViolation(ShockError):
    """A proved inequality failed numerically."""

    exit_code = 4
