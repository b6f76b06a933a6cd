"""Exception types shared across the package."""


class DimensionError(ValueError):
    """Operands live in a different number of torus variables."""


class DomainError(ValueError):
    """A parameter lies outside its admissible range."""


class InvarianceError(ValueError):
    """A Laurent polynomial that must be W-invariant is not."""


class DivisibilityError(ArithmeticError):
    """Exact polynomial division left a nonzero remainder."""


class DegeneracyError(ArithmeticError):
    """A Gram submatrix turned out singular (truncation order too small
    or inadmissible weight parameters)."""
