"""Exception types shared across the package.

Every error can carry a structured ``witness`` (a dict or tuple pointing at
the offending piece of data) so callers and the CLI can report exactly what
failed without re-deriving it.
"""
from __future__ import annotations


class LabError(Exception):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class ValidationError(LabError):
    """Malformed input data (bad shape, dangling references, broken laws)."""


class MissingIdentity(ValidationError):
    pass


class IdentityLawViolation(ValidationError):
    pass


class AssociativityViolation(ValidationError):
    pass


class IllTypedComposition(ValidationError):
    pass


class BoundaryMismatch(ValidationError):
    pass


class NonParallelGenerator(ValidationError):
    pass


class SignatureMismatch(ValidationError):
    pass


class NonInvertibleComponent(ValidationError):
    pass


class NotFaithful(ValidationError):
    pass


class SizeLimitExceeded(LabError):
    """An enumeration would exceed the configured search bound."""


class NotClosedUnderOperations(LabError):
    """A candidate subobject is not closed under the algebra operations."""


class GeneratorComponentEscapes(LabError):
    """A structural 2-cell component of the ambient algebra misses the subobject."""


class NotOperationClosed(LabError):
    """A congruence is not compatible with the algebra operations."""


class LiftFailure(LabError):
    """A structure lift that should exist by construction could not be built."""


class UsageError(LabError):
    """Bad command-line usage."""
