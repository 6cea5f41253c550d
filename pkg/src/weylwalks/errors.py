"""Exception types shared across the package."""


class WeylWalksError(Exception):
    """Base class for all domain errors raised by this package."""


class UnsupportedType(WeylWalksError):
    """Requested Cartan type is not a supported simple type at desk scale."""


class DimensionCap(WeylWalksError):
    """A representation-dimension guard was exceeded."""


class LevelCap(WeylWalksError):
    """A growth-graph level grew past the configured vertex cap."""


class EnumerationCap(WeylWalksError):
    """An exact enumeration would exceed the configured word cap."""


class OrderViolation(WeylWalksError):
    """mu - lambda is not a nonnegative integer combination of simple roots."""


class NotAdmissible(WeylWalksError):
    """The given subset of simple roots is not delta-admissible."""


class NotInPolytope(WeylWalksError):
    """The given point lies outside the weight polytope K(delta)."""


class NotDominantDrift(WeylWalksError):
    """A chamber measure was requested for a drift outside K(delta)+."""


class NotAWeight(WeylWalksError):
    """The given lattice point is not a weight at the requested level."""


class NoConvergence(WeylWalksError):
    """The drift-inversion Newton solve failed to reach tolerance."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}
