"""Exception hierarchy shared by every module."""


class TorusAutomataError(Exception):
    pass


class InvalidParams(TorusAutomataError, ValueError):
    """Presentation parameters violate 1 + sum|p_i| < |q| (or n < 2)."""


class ReductionBudgetExceeded(TorusAutomataError):
    """The coefficient elimination sweep did not terminate within its budget."""


class StateBudgetExceeded(TorusAutomataError):
    pass


class AlphabetMismatch(TorusAutomataError, ValueError):
    pass


class CarryBoundError(TorusAutomataError):
    """A carry vector left its declared bounds (internal invariant breach)."""


class CarryCycleError(TorusAutomataError):
    pass


class NotRecognizable(TorusAutomataError, ValueError):
    """The matrix is not induced by multiplication by a polynomial."""
