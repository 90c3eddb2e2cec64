"""Exception types shared across the package.

Every error that carries a mathematical witness (a basis tuple where an
axiom fails, a candidate count for an exhausted search, ...) stores it on
the exception so callers and reports can surface it.
"""


class HacohError(Exception):
    """Base class for all package errors."""


class FieldMismatch(HacohError):
    """Operands live over different field specs."""


class DivisionByZero(HacohError):
    """Division by the zero element of a field."""


class InfiniteField(HacohError):
    """A finite-field-only operation was invoked on the rationals."""


class DimensionMismatch(HacohError):
    """Tensor/matrix shapes are incompatible."""


class NotASubgroup(HacohError):
    """Subquotient request where B is not contained in Z."""


class NotAGroup(HacohError):
    """A multiplication table fails the group axioms; .witness has a triple."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class CharMismatch(HacohError):
    """Construction requires a specific field characteristic."""


class NotInvertible(HacohError):
    """A linear map has no convolution inverse."""


class ShapeMismatch(HacohError):
    """Reg elements with different (degree, source, coefficients)."""


class DegreeUnsupported(HacohError):
    """Differential requested outside the implemented degree range."""


class SearchBudgetExceeded(HacohError):
    """An enumeration would exceed the configured candidate budget."""

    def __init__(self, needed, budget):
        super().__init__(f"enumeration needs {needed} candidates, budget is {budget}")
        self.needed = needed
        self.budget = budget


class NotACocycle(HacohError):
    """Input fails a cocycle identity; .witness has the offending tuple."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotMeasuring(HacohError):
    """A map fails the measuring law; .witness has the offending pair."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ActionInvalid(HacohError):
    """A declared action fails the module-(bi)algebra axioms."""


class ActionNotTrivial(HacohError):
    """Operation requires the trivial action."""


class NotGroupAlgebra(HacohError):
    """Dictionary operations need a group-algebra source."""


class NotNormalized(HacohError):
    """A cocycle is not trivial on the required tensor slots."""


class InvalidWitness(HacohError):
    """A stability/coboundary witness fails its defining identity."""


class ComponentConditionFailed(HacohError):
    """One of the five component conditions for assembling a normalized
    cocycle fails.  .index names the condition, .witness the basis tuple."""

    def __init__(self, index, witness=None):
        super().__init__(f"component condition ({index}) failed")
        self.index = index
        self.witness = witness


class EnumerationInfeasible(HacohError):
    """A required enumeration has an infinite or over-budget domain."""


class NoAntipode(HacohError):
    """The convolution system S * id = unit.counit has no solution."""


class ParseError(HacohError):
    """Problem file is not valid input; .location has context."""

    def __init__(self, message, location=None):
        super().__init__(message)
        self.location = location


class ValidationError(HacohError):
    """Problem file parsed but violates an invariant."""
