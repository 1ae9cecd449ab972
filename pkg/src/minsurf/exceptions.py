"""Exception types shared across the package."""


class MinsurfError(Exception):
    """Base class for all package errors."""


class CatalogError(MinsurfError):
    """Unknown catalog entry or invalid construction parameters."""


class FeatureNotAvailable(CatalogError):
    """Surface requires an optional feature that is not enabled."""


class DomainEvaluationError(MinsurfError):
    """Evaluation requested at a point outside the surface domain (e.g. a puncture)."""


class ContractError(MinsurfError):
    """Inputs violate an operation contract (e.g. sections on different grids)."""


class IntegrityError(MinsurfError):
    """Internal consistency check failed (divisor mismatch, non-integer count, ...)."""


class QuadratureError(MinsurfError):
    """Quadrature did not converge to the requested tolerance."""


class IndeterminateSpectrumError(MinsurfError):
    """The eigenvalue tolerance policy could not separate the kernel cluster."""


class BoundarySupportWarning(UserWarning):
    """A section on a disk domain is not compactly supported; boundary terms
    from integration by parts are untrusted."""
