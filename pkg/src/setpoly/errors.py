"""Exception types shared across the package.

Every error raised by the library derives from SetPolyError so callers can
catch domain failures without also swallowing programming errors.
"""


class SetPolyError(Exception):
    """Base class for all library errors."""


class ArityError(SetPolyError):
    """Tuple length does not match the declared arity, or arities disagree."""


class OverlapError(SetPolyError):
    """Disjoint union was asked to merge sets that share an element."""


class NotContainedError(SetPolyError):
    """Set difference was asked to remove elements that are not present."""


class DimensionMismatch(SetPolyError):
    """Polynomials or arguments live over different tuple dimensions."""


class NotDominatedError(SetPolyError):
    """Subtraction requires the subtrahend to sit inside coefficientwise."""


class LengthMismatch(SetPolyError):
    """Weight vectors of different lengths cannot be compared."""


class DegreeTooHighError(SetPolyError):
    """A member reaches the ambient dimension and embedding is disabled."""


class EmptySystemError(SetPolyError):
    """The operation needs at least one member polynomial."""


class MalformedMinimalError(SetPolyError):
    """The designated minimal member is not in single-marker monomial form."""


class OutOfWindowError(SetPolyError):
    """A point or shift set escapes the materialized window."""


class WindowMismatchError(SetPolyError):
    """Two materialized colorings use different window orderings."""


class MalformedOracleError(SetPolyError):
    """A coloring oracle is partial, out of range, or otherwise unusable."""


class BudgetExhausted(SetPolyError):
    """The deterministic search ran out of budget before finding a witness.

    This is not a refutation: a larger window, a larger shift-set cap, or a
    longer time allowance may still succeed.
    """


class SubOracleFailure(SetPolyError):
    """A stage of the focusing composer could not be answered in budget."""

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace


class LineNotFoundError(SetPolyError):
    """No monochromatic combinatorial line exists for the given coloring."""


class MalformedCertificateError(SetPolyError):
    """Certificate JSON is structurally broken or internally inconsistent."""


class NotHomomorphicError(SetPolyError):
    """The sampled pairs witness a failure of the homomorphism law."""


class DegreeOverflowError(SetPolyError):
    """A monomial exceeds the declared total degree bound."""


class CapTooSmallError(SetPolyError):
    """The requested threshold exceeds the enumeration cap."""


class NotPolynomialError(SetPolyError):
    """The map fails the finite-difference degree bound it was claimed at."""


class EmptySubsetError(SetPolyError):
    """The embedding into tuples is undefined on the empty set."""


class TooLargeError(SetPolyError):
    """The subset has more elements than the target tuple length."""


class ParseError(SetPolyError):
    """Strict JSON parsing failed; the message carries the offending path."""
