"""Exception hierarchy shared by every rigidkit module."""


class RigidkitError(Exception):
    pass


class DomainError(RigidkitError, ValueError):
    """Input outside the domain of an operation."""


class CapExceeded(DomainError):
    """A contraction would push an edge or loop past multiplicity two."""

    def __init__(self, message, element):
        super().__init__(message)
        self.element = element


class NotDecomposable(DomainError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NonGenericSamplingExhausted(RigidkitError):
    """Every resampling round produced data failing the genericity checks."""


class InternalConsistencyError(RigidkitError):
    """Combinatorial and algebraic answers disagree. Always a bug or an unlucky seed."""


class OracleRefusal(DomainError):
    """Instance too large for an exhaustive oracle."""
