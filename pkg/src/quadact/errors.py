"""Exception hierarchy shared across the package."""


class QuadactError(Exception):
    """Base class for all package errors."""


class BackendMismatch(QuadactError):
    pass


class DivisionByZero(QuadactError):
    pass


class ArithmeticInconsistency(QuadactError):
    """Symbolic and numeric views of an exact value disagree.

    Raised when the radical tower was driven outside the regime where
    reduction-based zero testing is sound (e.g. a radicand that was
    secretly a perfect power).
    """


class DimensionMismatch(QuadactError):
    pass


class NotCommuting(QuadactError):
    pass


class NotNilpotent(QuadactError):
    pass


class UnsplittableCharPoly(QuadactError):
    """Exact eigenvalue extraction failed; use the APPROX backend."""


class IllConditioned(QuadactError):
    """APPROX eigenvalue clustering is ambiguous at the working tolerance."""


class ValidationError(QuadactError):
    """An algebra table violates one of the structural axioms."""

    def __init__(self, kind, message, witness=None):
        super().__init__(f"{kind}: {message}")
        self.kind = kind
        self.witness = witness


class NotCommutative(ValidationError):
    def __init__(self, message, witness=None):
        ValidationError.__init__(self, "NotCommutative", message, witness)


class NotAssociative(ValidationError):
    def __init__(self, message, witness=None):
        ValidationError.__init__(self, "NotAssociative", message, witness)


class NotUnital(ValidationError):
    def __init__(self, message, witness=None):
        ValidationError.__init__(self, "NotUnital", message, witness)


class NotLocal(ValidationError):
    def __init__(self, message, witness=None):
        ValidationError.__init__(self, "NotLocal", message, witness)


class WNotGenerating(ValidationError):
    def __init__(self, message, witness=None):
        ValidationError.__init__(self, "WNotGenerating", message, witness)


class WNotInMaximalIdeal(ValidationError):
    def __init__(self, message, witness=None):
        ValidationError.__init__(self, "WNotInMaximalIdeal", message, witness)


class DegreeNotTwo(QuadactError):
    pass


class CorankNotTwo(QuadactError):
    pass


class FixedSingularLocus(QuadactError):
    """The singular locus is pointwise fixed; canonicalization is out of scope."""


class DimensionOutOfRange(QuadactError):
    pass


class TypeMismatch(QuadactError):
    pass


class PreconditionViolated(QuadactError):
    pass


class NoSolutionFound(QuadactError):
    pass


class InadmissibleParams(QuadactError):
    pass


class SingularTransform(QuadactError):
    pass


class ZeroElement(QuadactError):
    pass


class WitnessMismatch(QuadactError):
    pass


class InvarianceViolated(QuadactError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InvalidBase(QuadactError):
    pass


class ParseError(QuadactError):
    pass


class InternalCheckFailed(QuadactError):
    """A self-check that should hold by theorem failed; implementation bug."""
