"""Exception hierarchy.  Every error raised on bad input derives from
:class:`ArtinHodgeError`; :class:`InternalInconsistency` signals a bug."""


class ArtinHodgeError(Exception):
    pass


class NotLocal(ArtinHodgeError):
    pass


class NilpotencyBoundViolated(ArtinHodgeError):
    pass


class DimensionMismatch(ArtinHodgeError):
    pass


class NotLocalHomomorphism(ArtinHodgeError):
    pass


class NotFreeWitnessed(ArtinHodgeError):
    pass


class AmbientMismatch(ArtinHodgeError):
    pass


class AlgebraMismatch(ArtinHodgeError):
    pass


class PreconditionUnmet(ArtinHodgeError):
    pass


class NotAComplex(ArtinHodgeError):
    pass


class NonLocalResult(ArtinHodgeError):
    pass


class NotPure(ArtinHodgeError):
    pass


class DecompositionFailure(ArtinHodgeError):
    pass


class NotClassicalMHS(ArtinHodgeError):
    pass


class SemiSimplicialViolation(ArtinHodgeError):
    pass


class PurityViolation(ArtinHodgeError):
    pass


class VerifyFailure(ArtinHodgeError):
    pass


class NotCocycle(ArtinHodgeError):
    pass


class InternalInconsistency(AssertionError):
    """Two independent criteria disagreed; never a valid state."""
