"""Exception hierarchy shared by all modules."""


class CoherenceError(Exception):
    """Base class for every error raised by this package."""


class EmptySpace(CoherenceError):
    pass


class CapExceeded(CoherenceError):
    pass


class UnknownAtom(CoherenceError):
    pass


class EmptyAntecedent(CoherenceError):
    pass


class DegenerateAntecedent(CoherenceError):
    """The antecedent of an iterated conditional is identically zero."""


class OutOfRangeAssessment(CoherenceError):
    pass


class OutOfRange(CoherenceError):
    pass


class MissingValue(CoherenceError):
    pass


class SpaceMismatch(CoherenceError):
    pass


class InvalidMass(CoherenceError):
    pass


class LengthMismatch(CoherenceError):
    pass


class EmptyDisjunction(CoherenceError):
    pass


class IncoherentBase(CoherenceError):
    pass


class IncoherentTriple(CoherenceError):
    pass


class DegenerateTarget(CoherenceError):
    pass


class NotPConsistent(CoherenceError):
    pass


class UnsupportedExpression(CoherenceError):
    """The expression parses but no construction is defined for it."""


class MissingAssessment(CoherenceError):
    """Raised with the full list of absent context keys."""

    def __init__(self, keys):
        self.keys = sorted(set(keys))
        super().__init__("missing assessment for: " + ", ".join(self.keys))


class DSLSyntaxError(CoherenceError):
    """Parse failure; carries a 1-based line and column."""

    def __init__(self, message, text="", pos=0):
        self.pos = pos
        self.line = text.count("\n", 0, pos) + 1
        self.column = pos - (text.rfind("\n", 0, pos) + 1) + 1
        self.message = message
        super().__init__(f"{self.line}:{self.column}: {message}")


class AmbiguousBar(DSLSyntaxError):
    pass
