"""Exception hierarchy shared by all modules."""


class BraidQuiverError(Exception):
    pass


class MalformedInputError(BraidQuiverError, ValueError):
    """Input has the wrong shape or cannot be parsed."""


class DomainError(BraidQuiverError, ValueError):
    """Input is well-formed but outside the operation's domain."""


class StructuralError(BraidQuiverError, ValueError):
    """A representation's matrices do not have the declared shapes."""


class InternalConsistencyError(BraidQuiverError, RuntimeError):
    """A construction violated an invariant it guarantees. Always a bug."""


class TheoremViolation(BraidQuiverError):
    """A machine-checked claim about the quiver model failed."""
