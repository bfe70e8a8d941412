"""Exception hierarchy shared by all modules."""


class MkdvError(Exception):
    """Base class for every error raised by this package."""


# exact arithmetic
class DivisibilityError(MkdvError, ArithmeticError):
    """Exact division left a nonzero remainder."""


class FieldError(MkdvError, ArithmeticError):
    """A coefficient that must be invertible is not (e.g. a dual number with zero value)."""


class DomainError(MkdvError, ValueError):
    """Argument outside the domain of the operation (e.g. log-derivative of zero)."""


class PoleError(MkdvError, ArithmeticError):
    """Rational function evaluated at a root of its denominator."""


class InconsistentSystemError(MkdvError, ArithmeticError):
    """Linear system has no solution."""


# loop algebra / dressing
class CenterGapError(MkdvError, ValueError):
    """Requested power of Lambda lies in a grade without a center direction."""


class GradeError(MkdvError, ValueError):
    """Element has grades outside the allowed range."""


class DepthError(MkdvError, ValueError):
    """Truncation window too shallow for the requested quantity."""


# generation
class SingularityError(MkdvError, ValueError):
    """Interacting variables coincide, so the master function is singular."""


class NotFertileError(MkdvError):
    """No polynomial solves the Wronskian equation in the requested direction."""


class DegreeError(MkdvError, ValueError):
    """Generation step is not degree increasing."""


class NotGenericError(MkdvError, ValueError):
    """Tuple has a multiple root or neighbours with a common root."""


# miura
class NotASolutionError(MkdvError, ValueError):
    """Function does not solve the Riccati equation."""


# serialization
class FormatError(MkdvError, ValueError):
    """Serialized document violates the schema or a mathematical invariant."""
