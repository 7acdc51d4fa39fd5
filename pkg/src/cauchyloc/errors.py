"""Exception hierarchy shared by all modules.

The CLI maps these onto exit codes: InvalidInput -> 2, NumericalFailure -> 3.
"""


class CauchylocError(Exception):
    pass


class InvalidInput(CauchylocError, ValueError):
    pass


class PoleError(InvalidInput):
    """Evaluation point sits on (or numerically at) a support point."""

    def __init__(self, index, residue, message=None):
        self.index = index
        self.residue = residue
        super().__init__(message or f"evaluation point is a pole (support index {index})")


class NumericalFailure(CauchylocError, ArithmeticError):
    pass


class UnresolvedWinding(NumericalFailure):
    def __init__(self, contour, message):
        self.contour = contour
        super().__init__(message)


class DegenerateStage(NumericalFailure):
    pass
