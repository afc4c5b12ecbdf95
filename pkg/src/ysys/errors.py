"""Exception types shared across the package."""


class YSysError(Exception):
    """Base class for all package errors."""


class RejectedInput(YSysError, ValueError):
    """The input sequence is not admissible for the requested system."""


class UnknownLabel(YSysError, KeyError):
    pass


class CompatibilityFailure(YSysError):
    """Two labels of one mutation set share a triangle."""


class ReflectionMismatch(YSysError):
    pass


class RotationMismatch(YSysError):
    pass


class OccurrenceMismatch(YSysError):
    pass


class WindowTooSmall(YSysError):
    pass


class ClassificationFailure(YSysError):
    pass


class SignIncoherence(YSysError):
    """A c-vector has components of both signs."""


class NotInPlusClass(YSysError, ValueError):
    pass


class DegenerateZ(YSysError, ValueError):
    pass


class DomainError(YSysError, ValueError):
    pass


class RelationViolation(YSysError):
    """A relation fails at a concrete occurrence (a, m, u)."""


class PeriodicityViolation(YSysError):
    pass


class MinimalityViolation(YSysError):
    pass


class IdentityViolation(YSysError):
    pass
