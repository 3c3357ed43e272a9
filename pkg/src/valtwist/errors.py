"""Exception types shared across the package."""


class DimensionMismatchError(ValueError):
    """Operands live in ordered groups of different dimensions."""


class DomainError(ValueError):
    """A degree lies outside the domain of a choice function."""


class DegreeMismatchError(ValueError):
    """Homogeneous components of different degrees were added."""


class RootNotFound(Exception):
    """No n-th root witness could be produced for a residue class."""


class LiftingError(Exception):
    """A residue class could not be lifted into the configured subring."""


class SetupError(Exception):
    """A setup file failed to parse or validate."""
