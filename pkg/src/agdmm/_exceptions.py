"""Exception hierarchy shared by every module of the package."""


class AgdmmError(Exception):
    """Base class for all errors raised intentionally by agdmm."""


# Field
class NotPrimeError(AgdmmError, ValueError):
    pass


class ReducibleModulusError(AgdmmError, ValueError):
    pass


class NoDefaultModulusError(AgdmmError, ValueError):
    pass


class FieldDivisionByZeroError(AgdmmError, ZeroDivisionError):
    pass


# Semigroups
class GcdNotOneError(AgdmmError, ValueError):
    pass


class NotInSemigroupError(AgdmmError, ValueError):
    pass


class InvalidDeltaError(AgdmmError, ValueError):
    pass


class OutOfRangeError(AgdmmError, ValueError):
    pass


# Function fields
class NotInSpanError(AgdmmError, ValueError):
    pass


class InvalidSolutionError(AgdmmError, ValueError):
    pass


class DInSetsError(AgdmmError, ValueError):
    pass


class BasisTweakError(AgdmmError, RuntimeError):
    """A basis modification step met a condition the algorithm assumes can never happen."""


# Constructions
class MTooSmallError(AgdmmError, ValueError):
    pass


class MNotInSemigroupError(AgdmmError, ValueError):
    pass


class NoUniqueMultipleError(AgdmmError, ValueError):
    pass


class ApInsufficiencyError(AgdmmError, ValueError):
    pass


class HypothesisUnmetError(AgdmmError, ValueError):
    pass


class SearchSpaceTooLargeError(AgdmmError):
    """Raised by the exhaustive search guard; mapped to its own CLI exit code."""


class NoSolutionInBoundError(AgdmmError, ValueError):
    pass


# Codec
class DimensionMismatchError(AgdmmError, ValueError):
    pass


class PartitionIndivisibleError(AgdmmError, ValueError):
    pass


class NotEnoughPlacesError(AgdmmError, ValueError):
    pass


class SemigroupCurveMismatchError(AgdmmError, ValueError):
    pass


class TooFewRespondersError(AgdmmError):
    """Fewer worker results than the recovery threshold; mapped to its own CLI exit code."""


class DuplicatePlaceError(AgdmmError, ValueError):
    pass


class RankDeficientError(AgdmmError, RuntimeError):
    """The interpolation matrix lost rank, which only happens if a scheme was built incorrectly."""


class CrossTermMismatchError(AgdmmError, RuntimeError):
    """Recovered basis coordinates disagree with the expansion of the decoded block products."""


# Simulation
class StragglerModelError(AgdmmError, ValueError):
    pass
