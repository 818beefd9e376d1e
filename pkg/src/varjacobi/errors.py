"""Exception types shared across the package."""


class VarJacobiError(Exception):
    """Base class for package errors."""


class UnsupportedCaseError(VarJacobiError):
    """Raised when an operation is asked about a parameter regime it does not cover."""


class NumericalError(VarJacobiError):
    """Raised when an iteration or quadrature fails to meet its tolerance."""


class TopologyError(NumericalError):
    """Raised when a traced contour violates the expected global structure."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class DegenerateParameterError(VarJacobiError):
    """Raised when integer-parameter degeneration makes a request ill-posed."""
