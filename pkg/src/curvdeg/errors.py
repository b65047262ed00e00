"""Exception types shared across the package."""


class CurvdegError(Exception):
    """Base class for all package-specific errors."""


class AntipodeError(CurvdegError):
    """Point is (numerically) antipodal to the chart center."""


class NonIntegrableError(CurvdegError):
    """Weighted integrand fails the decay check near the origin."""


class DegenerateFunctionError(CurvdegError):
    """A critical point with (numerically) singular Hessian was found."""


class SingularHessianError(CurvdegError):
    """Invariant requested at a degenerate critical point."""


class InconclusiveError(CurvdegError):
    """Sign classification falls outside the theorem's hypotheses."""


class BreakpointError(CurvdegError):
    """Degree requested at (or too close to) a breakpoint."""


class NotNondegenerateError(CurvdegError):
    """Nondegenerate degree formula applied to a function with a vanishing
    Laplacian at some critical point."""

    def __init__(self, message, offending=()):
        super().__init__(message)
        self.offending = tuple(offending)


class NoContractionError(CurvdegError):
    """Fixed-point iteration for the chart curve failed to contract."""


class DomainError(CurvdegError):
    """Argument outside the admissible index range."""
