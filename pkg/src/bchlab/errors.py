"""Exception types shared across the package."""


class BchLabError(Exception):
    """Base class for package errors."""


class NotPrimitiveError(BchLabError, ValueError):
    """Candidate modulus is not a primitive polynomial."""


class LengthMismatchError(BchLabError, ValueError):
    """Cyclic ring lengths of two operands differ."""


class ZeroWordError(BchLabError, ValueError):
    """Operation undefined for the all-zero word."""


class BadLengthError(BchLabError, ValueError):
    """Ring length is not of the form 2^m - 1."""


class InvalidLeaderError(BchLabError, ValueError):
    """Requested index is not a coset leader for this length."""


class NotDualCodewordError(BchLabError, ValueError):
    """Word is not divisible by the check polynomial."""


class InsufficientChecksError(BchLabError, RuntimeError):
    """Could not reach the requested check count within the weight limit."""


class MixedWeightsError(BchLabError, ValueError):
    """Operation requires a uniform-weight check set."""


class InconsistentListError(BchLabError, ValueError):
    """Decoder list contains codewords at differing distances."""


class ConfigError(BchLabError, ValueError):
    """Invalid run configuration (CLI exit code 2)."""
