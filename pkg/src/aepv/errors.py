"""Exception family shared across the package."""


class AepvError(Exception):
    """Base class for all package errors."""


class InvalidModulusError(AepvError, ValueError):
    """Modulus passed to a modular operation is smaller than 2."""


class NoInverseError(AepvError, ValueError):
    """Requested inverse does not exist (argument not coprime to modulus)."""


class InvalidMessageError(AepvError, ValueError):
    """Message outside the range the scheme can carry."""


class GenerationFailureError(AepvError, RuntimeError):
    """Parameter generation exhausted its attempt budget."""


class RejectedKeyError(AepvError, ValueError):
    """Certification authority refused to register a public key."""


class AuthenticationFailureError(AepvError):
    """Ciphertext or proof failed its verification check; no plaintext is released."""


class ForgeryFailureError(AepvError, RuntimeError):
    """Rogue-key forgery exhausted its resampling budget (never seen in practice)."""


class CodecError(AepvError, ValueError):
    """Base class for serialization errors."""


class TruncatedInputError(CodecError):
    """Encoded record ended before the declared length."""


class BadTagError(CodecError):
    """Unknown, duplicated, or out-of-order field tag."""


class InvalidFieldError(CodecError):
    """Field value out of range or not minimally encoded."""


class ArmorError(CodecError):
    """Malformed armored text (bad header, footer, or body)."""
