"""
Custom exception classes for the toolkit.
"""


class QuandleToolkitException(Exception):
    """Base exception for the symplectic quandle toolkit."""
    def __init__(self, message: str, details: dict = None):
        self.message = message
        self.details = details or {}
        super().__init__(self.message)


class ValidationException(QuandleToolkitException):
    """Raised when input validation fails."""
    pass


class RingException(ValidationException):
    """Raised for bad ring specs, reducible moduli or mismatched dimensions."""
    pass


class QuandleAxiomException(ValidationException):
    """Raised when a table that must be a quandle violates an axiom."""
    pass


class GaussCodeException(ValidationException):
    """Raised when a signed Gauss code is malformed."""
    pass


class NotAFieldException(ValidationException):
    """Raised when a field-only operation is requested over a non-field ring."""
    pass


class ModuleContextException(ValidationException):
    """Raised when module structure is required but the target table has none."""
    pass


class ResourceCapException(QuandleToolkitException):
    """Raised when a configured size or search cap is exceeded."""
    pass
