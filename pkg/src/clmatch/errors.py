"""Exception hierarchy shared by all modules."""


class ClmatchError(Exception):
    """Base class for every error raised by this package."""


class InputError(ClmatchError, ValueError):
    """Malformed or out-of-range input supplied by the caller."""


class GraphTooLarge(InputError):
    """The graph exceeds the configured maximum number of vertices per side."""


class PromiseViolation(ClmatchError):
    """The weights do not isolate a matching of the requested size."""


class ContractViolation(ClmatchError):
    """A routine was called outside the state its contract requires."""


class PreconditionViolation(ClmatchError):
    """A residual graph contains a cycle of non-positive weight."""


class TapeCorruption(ClmatchError):
    """A catalytic tape could not be restored to its initial contents."""
