"""Exception hierarchy.

Every error raised on bad input derives from :class:`GowerkError`, which is
itself a :class:`ValueError`, so callers that only care about "bad input"
can catch that.
"""


class GowerkError(ValueError):
    """Base class for all input and contract violations."""


# -- matrix validation -------------------------------------------------------

class NotSquare(GowerkError):
    pass


class NonFiniteEntry(GowerkError):
    pass


class AsymmetricInput(GowerkError):
    pass


class NegativeEntry(GowerkError):
    pass


class NonzeroDiagonal(GowerkError):
    pass


class DimensionMismatch(GowerkError):
    pass


class InvalidSVector(GowerkError):
    """Projection vector whose components do not sum to one."""


# -- numerical failures ------------------------------------------------------

class ConvergenceFailure(GowerkError, ArithmeticError):
    pass


class NegativeSquaredDistance(GowerkError):
    """The kernel implies a squared distance that is clearly negative."""


class NotPositiveSemidefinite(GowerkError):
    """Kernel has an eigenvalue below the PSD tolerance.

    The offending (smallest) eigenvalue is kept on ``eigenvalue``.
    """

    def __init__(self, eigenvalue, message=None):
        self.eigenvalue = float(eigenvalue)
        super().__init__(message or f"kernel is not positive semidefinite "
                                    f"(smallest eigenvalue {self.eigenvalue:.6g})")


class ConstantTooSmall(GowerkError):
    pass


# -- clustering --------------------------------------------------------------

class EmptyCluster(GowerkError):
    pass


class ZeroWeightCluster(GowerkError):
    pass


class LabelOutOfRange(GowerkError):
    pass


class KTooLarge(GowerkError):
    pass


class TooManyPoints(GowerkError):
    pass


class ShiftLawViolation(GowerkError, ArithmeticError):
    """Cost difference after a 2*sigma shift is not sigma*(m - k)."""


class MatrixFormatError(GowerkError):
    """Malformed CSV or JSON matrix file."""
