"""Exception hierarchy shared by every module."""


class SelfSimError(Exception):
    """Base class for all library errors."""


class InvalidGrid(SelfSimError, ValueError):
    pass


class MalformedPath(SelfSimError, ValueError):
    pass


class NonPositiveTime(SelfSimError, ValueError):
    pass


class InvalidIndex(SelfSimError, ValueError):
    pass


class InvalidScale(SelfSimError, ValueError):
    pass


class GridMismatch(SelfSimError, ValueError):
    pass


class InsufficientSamples(SelfSimError, ValueError):
    pass


class InvalidSpec(SelfSimError, ValueError):
    pass


class FactorizationFailure(SelfSimError, ArithmeticError):
    pass


class AsymmetricGrid(SelfSimError, ValueError):
    pass


class InvalidAlpha(SelfSimError, ValueError):
    pass


class AsymmetricMeasure(SelfSimError, ValueError):
    pass


class TimeNotOnGrid(SelfSimError, KeyError):
    pass


class EmptySample(SelfSimError, ValueError):
    pass


class ConfigError(SelfSimError, ValueError):
    pass


class OriginTooClose(SelfSimError, ArithmeticError):
    """Path comes within the radius guard of the origin; winding is refused."""

    def __init__(self, message, index=None, time=None, level=None):
        super().__init__(message)
        self.index = index
        self.time = time
        self.level = level


class AmbiguousStep(SelfSimError, ArithmeticError):
    """Consecutive points subtend an angle of at least pi; refine the grid."""

    def __init__(self, message, index=None, time=None, level=None):
        super().__init__(message)
        self.index = index
        self.time = time
        self.level = level
