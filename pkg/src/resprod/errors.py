"""Exception hierarchy shared by all resprod modules."""


class ResprodError(Exception):
    """Base class for all toolkit errors."""


class OutOfRangeError(ResprodError):
    """Input outside the supported integer range."""


class NotPrimeError(ResprodError):
    """A prime argument failed the primality check."""


class NotInvertibleError(ResprodError):
    """Requested a modular inverse of a non-unit."""


class NotCubeFreeError(ResprodError):
    """Modulus is divisible by the cube of a prime."""


class UnknownCharacterError(ResprodError):
    """Character exponent vector does not belong to the group."""


class NoNonprincipalError(ResprodError):
    """Scan requested on a group with no nonprincipal character."""


class BadZetaError(ResprodError):
    """Smoothness exponent outside (0, 1)."""


class BadRangeError(ResprodError):
    """Empty or inverted numeric range."""


class BadModulusError(ResprodError):
    """Modulus does not have the shape required by the construction."""


class BadSubgroupError(ResprodError):
    """Element set is not a multiplicative subgroup of the unit group."""


class BoundTooLargeError(ResprodError):
    """Factor bound must stay below the modulus."""


class PrimeTooLargeError(ResprodError):
    """A prime factor exceeds the packing capacity."""


class IntervalEmptyError(ResprodError):
    """A sampling window contains no admissible prime."""


class NoSolutionError(ResprodError):
    """Target is not representable with the requested parameters.

    ``certified`` is True when the failure was established by an
    exhaustive search (the tables were complete), as opposed to a
    truncated one.
    """

    def __init__(self, message: str, certified: bool = True):
        super().__init__(message)
        self.certified = certified


class VerificationError(ResprodError):
    """A witness failed its re-check at construction."""


class ResourceExceededError(ResprodError):
    """A configured enumeration cap would be exceeded."""


class OutOfMemoryError(ResourceExceededError):
    """Unit-group table would exceed the configured cap."""


class WindowTooLargeError(ResourceExceededError):
    """Dyadic window larger than the configured enumeration cap."""


class TooLargeError(ResourceExceededError):
    """Pair enumeration larger than the configured cap."""


class ConfigError(ResprodError):
    """Invalid experiment configuration."""


class IoError(ResprodError):
    """Report could not be written or read."""
