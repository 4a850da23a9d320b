"""Exception hierarchy shared by the library and the command line front end."""


class PlusctlError(Exception):
    """Base class for every error raised by plusctl."""


class ValidationError(PlusctlError):
    """An input violates an invariant the computation depends on (exit status 1)."""


class ResourceExhausted(PlusctlError):
    """A bounded computation ran out of room (exit status 2)."""
