"""Exception types shared across the toolkit."""


class SpecboundError(Exception):
    """Base class for all toolkit errors."""


class InputError(SpecboundError, ValueError):
    """Malformed or out-of-domain input: bad vertex ids, bad parameters, bad file formats."""


class PreconditionError(SpecboundError, ValueError):
    """Structurally valid input that violates an operation's stated precondition."""


class ResourceLimitError(SpecboundError, RuntimeError):
    """A configured size or enumeration cap was exceeded."""


class NumericError(SpecboundError, RuntimeError):
    """A numerical routine failed to meet its accuracy contract."""


class ConvergenceError(NumericError):
    """Iteration budget exhausted before reaching the requested tolerance."""
