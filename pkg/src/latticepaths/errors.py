"""Exception types shared across the package."""


class LatticePathError(Exception):
    """Base class for all package-specific errors."""


class ModelFileError(LatticePathError):
    """A model file or model definition is malformed."""


class InvalidModelError(LatticePathError):
    """The operation needs a model satisfying the validity invariants."""


class PeriodicModelError(LatticePathError):
    """Asymptotics and limit laws need an aperiodic step polynomial."""


class NotLukasiewiczError(LatticePathError):
    """The operation is restricted to walks whose only down jump is -1."""


class BranchDegenerateError(LatticePathError):
    """Small and large kernel branches collide; z is at or beyond the singularity."""


class NumericalSingularityError(LatticePathError):
    """A linear system was singular or a root refinement failed to converge."""


class NoRho1Error(LatticePathError):
    """The denominator 1 - z*P0geq(u1(z)) has no root on (0, rho]."""


class InconsistentCaseError(LatticePathError):
    """The (criticality, drift) combination has no formula (blank table cell)."""
