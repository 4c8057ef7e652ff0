"""
Exception hierarchy for plumbtop.

All errors derive from ValueError, so callers that only care about bad input
can catch that.
"""


class PlumbtopError(ValueError):
    """Base class for every error raised by plumbtop."""


class MatrixError(PlumbtopError):
    """Malformed integer matrix, or an operation undefined for its shape."""


class GraphError(PlumbtopError):
    """Invalid plumbing graph or a violated calculus precondition."""


class SeifertError(PlumbtopError):
    """Invalid Seifert invariants or inconsistent monodromy data."""


class GermError(PlumbtopError):
    """Invalid or out-of-scope germ data."""


class GluingError(PlumbtopError):
    """Impossible gluing of bounded pieces."""


class InputError(PlumbtopError):
    """Malformed input file."""
