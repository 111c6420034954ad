"""Exception types shared across the package."""


class HermlatError(Exception):
    """Base class for all package errors."""


class InvalidInput(HermlatError):
    """An argument violates a documented precondition."""


class FactorBoundExceeded(HermlatError):
    """Trial division hit the configured bound before finishing."""


class InsufficientPrecision(HermlatError):
    """A local computation cannot be decided at the working precision."""


class NoRoot(HermlatError):
    """The residue polynomial has no simple root to lift."""


class SingularGram(HermlatError):
    """A Gram matrix is not invertible at the working precision."""


class NonHermitian(HermlatError):
    """A matrix fails the conjugate-symmetry requirement."""


class NotSelfDual(HermlatError):
    """A lattice expected to be self-dual is not."""


class NotModular(HermlatError):
    """A lattice expected to be modular (for the given ideal) is not."""


class NotPerfect(HermlatError):
    """A pairing expected to be perfect is not."""


class IntegralityViolation(HermlatError):
    """Gram entries land outside the ideal the pseudo-basis demands."""


class NotEvenDiagonal(HermlatError):
    """A vector of odd norm obstructs hyperbolization."""


class Inconsistent(HermlatError):
    """A (label, rank) or similar combination is self-contradictory."""


class ConstructionFailed(HermlatError):
    """A bounded search was exhausted without producing a witness."""


class NoSuchGenus(HermlatError):
    """The requested genus symbol is infeasible."""


class UsageError(HermlatError):
    """Bad command line; maps to exit code 2."""
