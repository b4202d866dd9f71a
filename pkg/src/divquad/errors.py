"""Exception types shared across the package."""


class DivquadError(Exception):
    """Base class for all package errors."""


class DimensionError(DivquadError, ValueError):
    """Operands do not have matching or supported dimensions."""


class NotWeaklyHyperbolic(DivquadError):
    """The origin lies in the convex hull of n or fewer frame vectors."""


class NonConvergence(DivquadError):
    """An iterative solver ran out of iterations or redraws."""


class OffVariety(DivquadError, ValueError):
    """A point expected on a variety has a residual above tolerance."""


class NotInSpan(DivquadError, ValueError):
    """A vector u is not in Span(lambda, 1)."""


class NoPrediction(DivquadError):
    """No closed-form topological prediction is available for this spec."""
