"""Exception types raised by swapmeter."""


class DimensionError(ValueError):
    """Matrix shapes are incompatible with the requested operation."""


class UnphysicalStateError(ValueError):
    """A Bloch vector or density matrix lies outside the set of valid states."""


class VisibilityUnrecoverableError(ArithmeticError):
    """The visibility cannot be recovered from the ancilla statistics (cos(phi) ~ 0)."""
