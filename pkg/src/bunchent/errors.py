"""Exception types shared across the package."""


class BunchentError(Exception):
    """Base class for errors raised by this package."""


class CapacityError(BunchentError):
    """A requested object exceeds the dense-representation size caps."""


class InvariantError(BunchentError):
    """A state or matrix violates a structural invariant beyond tolerance."""


class FileFormatError(BunchentError):
    """A state file is unreadable or structurally malformed."""
