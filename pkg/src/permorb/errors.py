"""Exception hierarchy.

Every error raised on bad user input derives from :class:`PermorbError`.
:class:`InternalConsistencyError` is different in kind: it signals that two
independent computations which must agree did not, i.e. a bug.
"""


class PermorbError(Exception):
    """Base class for all user-facing errors."""


class ParseError(PermorbError, ValueError):
    pass


class MalformedSyntax(ParseError):
    pass


class UnknownElement(ParseError):
    pass


class RepeatedElement(ParseError):
    pass


class GroundMismatch(PermorbError, ValueError):
    pass


class BadGeneratorIndex(PermorbError, IndexError):
    pass


class EmptyData(PermorbError, ValueError):
    pass


class NotAdmissible(PermorbError):
    """The ordered product of the monodromy permutations is not the identity."""

    def __init__(self, witness, message=None):
        self.witness = witness
        super().__init__(message or f"ordered product is {witness}, not the identity")


class BadMarkedChoice(PermorbError, ValueError):
    pass


class InvalidRing(PermorbError):
    def __init__(self, violations):
        self.violations = list(violations)
        head = "; ".join(str(v) for v in self.violations[:3])
        super().__init__(f"fusion ring fails {len(self.violations)} axiom check(s): {head}")


class BadLabel(PermorbError, ValueError):
    pass


class IncompleteAssignment(PermorbError):
    def __init__(self, missing):
        self.missing = list(missing)
        super().__init__(f"no label assigned to orbit(s) {self.missing}")


class CombinatorialBlowup(PermorbError):
    def __init__(self, count, cap):
        self.count = count
        self.cap = cap
        super().__init__(f"enumeration needs {count} rows, cap is {cap}")


class InsufficientTruncation(PermorbError, ValueError):
    pass


class BadWeightDenominator(PermorbError, ValueError):
    pass


class SewPairNotInverse(PermorbError):
    def __init__(self, product):
        self.product = product
        super().__init__(f"sewn pair does not compose to the identity (product {product})")


class NoRemainingPoints(PermorbError, ValueError):
    pass


class SchemaError(PermorbError):
    """A problem or ring file does not match its schema."""


class InternalConsistencyError(AssertionError):
    """Two computations that are theorems of each other disagreed."""
