"""Exception hierarchy shared by all qhscatter modules."""


class QHScatterError(Exception):
    """Base class for every error raised by the library."""


class OverlapError(QHScatterError, ValueError):
    """Two uniform segments share part of their interiors."""


class PlacementError(QHScatterError, ValueError):
    """A delta spike sits strictly inside a segment."""


class DegenerateBranchError(QHScatterError, ValueError):
    """The interior wavenumber sqrt(k**2 - V) vanishes exactly."""


class SingularCompositionError(QHScatterError, ArithmeticError):
    """The composed transfer matrix cannot be inverted for (C, D).

    Complex potentials may have spectral singularities at real k, where
    the transmission amplitude is infinite.
    """


class BoundaryError(QHScatterError, ValueError):
    """A quantity was requested exactly on a discontinuity."""


class BracketError(QHScatterError, ValueError):
    """The root of the bound-state equation is not bracketed."""

    def __init__(self, message, suggested_L=None):
        super().__init__(message)
        self.suggested_L = suggested_L


class ConvergenceError(QHScatterError, RuntimeError):
    """An iterative solver ran out of iterations."""


class ResolutionError(QHScatterError, ValueError):
    """Discretization parameters violate the required scale ordering."""
