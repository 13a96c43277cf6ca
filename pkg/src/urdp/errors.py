"""Exception hierarchy shared by every module."""


class UrdpError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(UrdpError, ValueError):
    """An argument or configuration violates a documented precondition."""


class LengthError(ParameterError):
    """A bit count exceeds the length of the string it addresses."""


class BitOverflowError(ParameterError):
    """An integer does not fit in the requested number of bits."""


class PaddingError(UrdpError):
    """Decrypt-side padding parameters are inconsistent.

    Carries a short machine-readable ``reason`` so that decryption can map
    it to a rejection code.
    """

    def __init__(self, reason: str, message: str = ""):
        super().__init__(message or reason)
        self.reason = reason


class FormatError(UrdpError, ValueError):
    """A serialized key or ciphertext is malformed."""


class ExperimentError(UrdpError):
    """An adversary broke the rules of a security experiment."""
