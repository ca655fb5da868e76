"""Exception types shared across the package."""

from __future__ import annotations


class MirrorProxError(Exception):
    """Base class for all package errors."""


class DimMismatchError(MirrorProxError):
    """Vector or oracle dimensions are inconsistent."""


class NonFiniteConstantError(MirrorProxError):
    """A declared constant or vector entry is NaN or infinite."""


class NonPositiveModulusError(MirrorProxError):
    """A strong-convexity modulus that must be positive is not."""


class InvalidToleranceError(MirrorProxError):
    """Tolerances must satisfy eps0 >= eps > 0."""


class EmptyListError(MirrorProxError):
    """An operation received an empty summand list."""


class InvalidSpecError(MirrorProxError):
    """An instance-generator specification is malformed."""


class SingularSystemError(MirrorProxError):
    """A direct linear solve failed or left a large residual."""


class UnknownSuiteError(MirrorProxError):
    """Requested invariant suite is not registered."""


class UnknownFamilyError(MirrorProxError):
    """Requested benchmark family is not registered."""


class InvalidProblemError(MirrorProxError):
    """Problem validation produced diagnostics; carries the list."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        joined = "; ".join(str(d) for d in self.diagnostics)
        super().__init__(f"invalid problem: {joined}")


class ConfigError(MirrorProxError):
    """Run configuration could not be parsed or is inconsistent."""
