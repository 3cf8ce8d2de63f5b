"""Exception hierarchy shared by every module of the package."""


class ValtreeError(Exception):
    """Base class for all errors raised by valtree."""


class DivisionByZero(ValtreeError, ZeroDivisionError):
    pass


class IncompatibleValuation(ValtreeError, TypeError):
    """A valuation was applied to an element of a field family it does not cover."""


class NotIrreducibleModulus(ValtreeError, ValueError):
    pass


class MixedFamilies(ValtreeError, TypeError):
    pass


class ParseError(ValtreeError, ValueError):
    pass


class SingularMatrix(ValtreeError, ArithmeticError):
    pass


class NotSpecialLinear(ValtreeError, ValueError):
    pass


class NotUnipotentForm(ValtreeError, ValueError):
    pass


class NotDiagonal(ValtreeError, ValueError):
    pass


class DimensionMismatch(ValtreeError, ValueError):
    pass


class BallTooLarge(ValtreeError, RuntimeError):
    """Word-ball enumeration exceeded its element cap."""

    def __init__(self, cap, radius):
        super().__init__(f"word ball exceeded {cap} elements while expanding radius {radius}")
        self.cap = cap
        self.radius = radius


class UnsupportedDimension(ValtreeError, ValueError):
    pass


class InfiniteResidueField(ValtreeError, ValueError):
    pass


class NeedsEvaluationPoint(ValtreeError, ValueError):
    pass


class DegenerateSpan(ValtreeError, ValueError):
    pass


class NotIrreducible(ValtreeError, ValueError):
    """The generators do not span the full matrix algebra."""


class ScenarioError(ValtreeError, ValueError):
    pass
