"""Exception types shared across the package."""


class OsGraphError(Exception):
    """Base class for all errors raised by osgraph."""


class IndexOutOfRange(OsGraphError, ValueError):
    pass


class LoopEdge(OsGraphError, ValueError):
    pass


class SizeCapExceeded(OsGraphError, ValueError):
    pass


class NotSymmetric(OsGraphError, ValueError):
    pass


class NotSquare(OsGraphError, ValueError):
    pass


class ShapeMismatch(OsGraphError, ValueError):
    pass


class ParseError(OsGraphError, ValueError):
    """Malformed text input. ``line`` is 1-based, or None if not applicable."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NotInducedBipartite(OsGraphError, ValueError):
    pass


class DegenerateQuotient(OsGraphError, ArithmeticError):
    """X lies (numerically) in the quotiented subspace, so the ratio is undefined."""


class SolverError(OsGraphError, RuntimeError):
    """The SDP solver did not return an optimal point.

    ``solution`` holds the last iterate and ``problem`` the offending LMI so
    callers can dump it for replay.
    """

    status = "Error"

    def __init__(self, message, solution=None, problem=None):
        super().__init__(message)
        self.solution = solution
        self.problem = problem


class Infeasible(SolverError):
    status = "Infeasible"


class Unbounded(SolverError):
    status = "Unbounded"


class MaxIterations(SolverError):
    status = "MaxIterations"
