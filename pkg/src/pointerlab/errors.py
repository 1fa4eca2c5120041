"""Shared exception and warning types."""


class ValidationError(ValueError):
    """Inputs violate a documented precondition or config schema."""


class CapacityError(RuntimeError):
    """A brute-force computation would exceed its hard size guard."""


class ObserverWindowError(ValidationError):
    """The observer's time distribution puts too little mass on its window."""


class GridResolutionWarning(UserWarning):
    """A sampling grid undersamples the fastest oscillation of the overlap."""
