"""Exception hierarchy shared by all stacky modules."""

from __future__ import annotations


class StackyError(Exception):
    """Base class for all errors raised by this package."""


class NonBijectionError(StackyError):
    """An image array does not describe a permutation."""


class GroupTooLargeError(StackyError):
    """Group generation exceeded the configured element or degree cap."""


class BadCharacteristicError(StackyError):
    """Characteristic parameter is neither 0 nor a prime."""


class NotASubgroupError(StackyError):
    """Element set is not a subgroup of the ambient group."""


class NotInNormalizerError(StackyError):
    """Element does not normalize the given cyclic subgroup."""


class NotAnActionError(StackyError):
    """Claimed group action violates the action axioms on a sampled point."""


class NotRationalError(StackyError):
    """Cyclotomic value asserted rational has a nonzero irrational part."""


class NonIntegralConstantError(StackyError):
    """Representation-ring structure constant is not a nonnegative integer."""


class OpaqueTensorError(StackyError):
    """Tensor product of two motives that both contain non-Tate atoms."""


class InconsistentActionError(StackyError):
    """Generator images do not extend to a group action on the model."""


class ShapeMismatchError(StackyError):
    """Correspondence blocks have incompatible shapes or endpoints."""


class NotTotalError(StackyError):
    """Finite-set map is not defined on every point or maps out of range."""


class NotIdempotentError(StackyError):
    """Correspondence is not an idempotent endomorphism."""


class NotEquidegreeError(StackyError):
    """Finite-set cover has fibers of unequal size."""


class NotAnAutomorphismError(StackyError):
    """Generator images do not define a group automorphism."""


class BadOrderError(StackyError):
    """Orbifold point order is below 2."""


class ParseError(StackyError):
    """Input document is not syntactically valid."""


class ValidationError(StackyError):
    """Input document is well-formed but violates a schema constraint."""
