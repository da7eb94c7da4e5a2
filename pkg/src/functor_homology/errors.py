"""Shared exception types."""


class AlgebraError(Exception):
    """Base class for all algebra-level failures."""


class ShapeError(AlgebraError):
    """Dimension or source/target mismatch."""


class RingMismatchError(AlgebraError):
    """Objects live over different rings."""


class MorphismError(AlgebraError):
    """A map fails well-definedness (relations/equivariance/naturality)."""


class ExactnessError(AlgebraError):
    """A precondition about composites or exactness is violated."""
