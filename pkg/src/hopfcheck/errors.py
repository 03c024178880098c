"""Exception hierarchy shared by all hopfcheck modules."""


class HopfcheckError(Exception):
    """Base class for all errors raised by this package."""


class ZeroDenominator(HopfcheckError):
    """A rational function was built with denominator 0."""


class DivisionByZero(HopfcheckError):
    """Division by the zero scalar."""


class PoleAtPoint(HopfcheckError):
    """A denominator vanishes at the requested parameter assignment."""


class MissingParameter(HopfcheckError):
    """A parameter has no value/image in the given assignment."""


class AlphabetMismatch(HopfcheckError):
    """Operands live over different alphabets."""


class MissingImage(HopfcheckError):
    """A generator map lacks an image for some letter."""


class BadFactorIndex(HopfcheckError):
    """Tensor factor index outside 1..arity."""


class NonOrientable(HopfcheckError):
    """A relation cannot be turned into a rewrite rule."""


class BoundTooSmall(HopfcheckError):
    """Completion degree bound below the degree of an input rule."""


class DegreeOverflow(HopfcheckError):
    """An element exceeds the degree cap of a graded computation."""


class NonInvertibleMap(HopfcheckError):
    """No inverse generator map is supplied or derivable."""


class BudgetExceeded(HopfcheckError):
    """A rewriting/completion step budget was exhausted."""


class PresentationError(HopfcheckError):
    """A presentation violates a structural invariant."""


class ParseError(HopfcheckError):
    """Syntax error in the presentation DSL, with source position."""

    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        if line is not None:
            message = "%d:%d: %s" % (line, col, message)
        super().__init__(message)


class UndeclaredSymbol(ParseError):
    """An identifier is neither a declared generator nor a parameter."""


class DuplicateGenerator(ParseError):
    """The same generator name is declared twice."""
