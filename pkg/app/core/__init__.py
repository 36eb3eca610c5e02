"""Core application components."""
from .exceptions import (
    QuandleToolkitException,
    ValidationException,
    RingException,
    QuandleAxiomException,
    GaussCodeException,
    NotAFieldException,
    ModuleContextException,
    ResourceCapException,
)

__all__ = [
    "QuandleToolkitException",
    "ValidationException",
    "RingException",
    "QuandleAxiomException",
    "GaussCodeException",
    "NotAFieldException",
    "ModuleContextException",
    "ResourceCapException",
]
