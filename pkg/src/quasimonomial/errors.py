"""Exception types shared by all modules."""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class DimensionError(ValueError):
    """Two objects live on lattices of different rank."""


class RankError(ArithmeticError):
    """A linear system that must be nonsingular is singular."""


class InternalLimitError(RuntimeError):
    """An iteration budget was exhausted before a guaranteed termination."""
