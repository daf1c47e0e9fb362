"""Exception classes shared by all modules."""


class PPQuadError(Exception):
    """Base class for package errors."""


class StructuralError(PPQuadError):
    """Malformed rotation system, face list or file."""


class DomainError(PPQuadError):
    """Input lies outside the domain of an operation (wrong surface, wrong class)."""


class PreconditionError(DomainError):
    """A stated precondition on the arguments does not hold."""


class BudgetExceeded(PPQuadError):
    """An exhaustive search would exceed its configured budget."""


class TheoremViolation(PPQuadError):
    """A search that is guaranteed to succeed failed.

    This never happens on valid input; seeing it means there is a bug.
    """
