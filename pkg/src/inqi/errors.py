"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class InqError(Exception):
    """Base class for every error raised by the library."""


class FormulaSyntaxError(InqError, ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


class DialectError(InqError):
    """A formula or model is used outside the dialect that admits it."""


class ModelError(InqError, ValueError):
    """Malformed model input (bad JSON, unknown worlds, failed validation)."""


class KindMismatch(InqError):
    pass


class SizeLimit(InqError):
    """A bounded enumeration would exceed its configured cap."""


class ResolutionExplosion(SizeLimit):
    pass


class UnknownSuite(InqError, KeyError):
    pass
