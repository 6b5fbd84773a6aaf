"""Exception types shared across the package."""


class DGStabError(Exception):
    """Base class for all package-specific errors."""


class DimensionMismatchError(DGStabError, ValueError):
    """Operands have incompatible orders."""


class NonSymmetricError(DGStabError, ValueError):
    """A matrix required to be symmetric is not, beyond tolerance."""


class SingularOperatorError(DGStabError, ArithmeticError):
    """A matrix-equation operator is numerically singular (solvability
    precondition violated)."""


class InfiniteClassError(DGStabError, ValueError):
    """Enumeration requested for a matrix class with infinitely many members."""


class NotThetaOrderedError(DGStabError, ValueError):
    """A diagonal matrix is not ordered along the requested permutation."""


class UnsupportedClassError(DGStabError, ValueError):
    """A matrix class is outside the set supported by the operation."""


class UnrepresentableError(DGStabError, ValueError):
    """The image of a region transform leaves the supported region kinds."""


class OrderTooLargeError(DGStabError, ValueError):
    """Matrix order exceeds the limit of a combinatorial operation."""
