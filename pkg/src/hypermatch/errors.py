"""Exception types shared by every module."""


class HypermatchError(Exception):
    """Base class for all library errors."""


class InputError(HypermatchError, ValueError):
    """Malformed or out-of-contract input."""


class DuplicateEdge(InputError):
    pass


class BadArity(InputError):
    pass


class IdOutOfRange(InputError):
    pass


class BadPath(InputError):
    pass


class NoSpectrum(InputError):
    """Raised when a spectral quantity is requested for a graph without edges."""


class BadCertificate(InputError):
    pass


class NotDivisible(HypermatchError, ArithmeticError):
    pass


class LimitExceeded(HypermatchError):
    """A configurable resource cap (recursion nodes, tree size) was hit."""


class Inconclusive(HypermatchError):
    """A numerical or refinement procedure stopped before reaching its target.

    ``result`` carries the last state when one exists.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class NotARoot(HypermatchError):
    """The edge weights are not a root of the multivariate matching polynomial."""

    def __init__(self, message, value=None):
        super().__init__(message)
        self.value = value
