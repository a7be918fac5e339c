"""Exception types shared across the package."""


class IsotropicaError(Exception):
    pass


class DimensionMismatchError(IsotropicaError, ValueError):
    """Operands have incompatible shapes or ambient dimensions."""


class EmptyWedgeError(IsotropicaError, ValueError):
    """Wedge embedding of a 0-dimensional subspace is undefined."""


class NotDecomposableError(IsotropicaError, ValueError):
    """Coordinate vector fails the quadratic relations, so it is not the
    wedge of any subspace."""


class BudgetExceededError(IsotropicaError):
    """An exhaustive enumeration would exceed the configured budget.

    Carries the projected number of subspaces so callers can report it.
    """

    def __init__(self, projected: int, budget: int, what: str = "enumeration"):
        self.projected = projected
        self.budget = budget
        self.what = what
        super().__init__(
            f"{what} refused: projected {projected} items exceeds budget {budget}"
        )


class FormulaViolationError(IsotropicaError):
    """A computed quantity disagrees with the closed-form value it must equal.

    This is the serious outcome: a dimension identity or bound failed on
    actual data. Carries expected and actual for reporting.
    """

    def __init__(self, context: str, expected, actual):
        self.context = context
        self.expected = expected
        self.actual = actual
        super().__init__(f"{context}: expected {expected}, got {actual}")
