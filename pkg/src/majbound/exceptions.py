"""
Exceptions raised in specific parts of majbound package.
"""

class NotHermitianException(Exception):
    """
    Raised when a matrix handed to an eigenvalue routine is not conjugate-symmetric
    within tolerance.
    """

class NoConvergenceException(Exception):
    """
    Raised when Jacobi sweeps or power iteration exceed their iteration cap.
    """

class DimensionMismatchException(Exception):
    """
    Raised when states, bases or matrices of different dimensions are combined.
    """

class InvalidBasisException(Exception):
    """
    Raised when basis vectors are not unit-norm or not pairwise orthogonal.
    """

class InvalidDensityMatrixException(Exception):
    """
    Raised when a matrix is not Hermitian, not unit-trace or not positive semidefinite.
    """

class NotNormalizedException(Exception):
    """
    Raised when a probability vector does not sum to one
    (or has entries far below zero).
    """

class BadOrderException(Exception):
    """
    Raised when Renyi or Tsallis entropy gets an order outside its domain.
    """

class NotSortedException(Exception):
    """
    Raised when a vector expected in nonincreasing order is not.
    """

class InvalidChoiceException(Exception):
    """
    Raised when a subset choice does not fit the bases (sizes, indices, count).
    """

class BudgetExceededException(Exception):
    """
    Raised when subset enumeration would examine more choices than allowed.
    The required count is kept in `required`.
    """
    def __init__(self, message: str, required: int = None):
        super().__init__(message)
        self.required = required

class WorkBudgetExceededException(Exception):
    """
    Raised when admixture tensors would need more elementary multiplications than allowed.
    The required count is kept in `required`.
    """
    def __init__(self, message: str, required: int = None):
        super().__init__(message)
        self.required = required

class OutOfRangeException(Exception):
    """
    Raised when an overlap or a family parameter lies outside its domain.
    """

class TooFewMeasurementsException(Exception):
    """
    Raised when a bound needs at least two measurements.
    """

class TooManyMeasurementsException(Exception):
    """
    Raised when permutation orbits would be too large to evaluate.
    """

class DegenerateChainException(Exception):
    """
    Raised when a multi-overlap chain sum vanishes under a positive weight
    (log of zero in the state-dependent bound).
    """

class LogOfNonpositiveException(Exception):
    """
    Raised when omega dotted with an admixture vector is not strictly positive.
    """

class InvalidConfigException(Exception):
    """
    Raised when a scenario config is malformed (JSON syntax or schema).
    """
