"""Exception hierarchy shared by the library and the CLI."""


class CGError(Exception):
    """Base class for package errors."""


class GenericityError(CGError, ValueError):
    """A projection direction was used that is not generic for the embedding."""


class InternalError(CGError, RuntimeError):
    """A retry cap or recursion budget was exhausted."""


class InvariantViolation(CGError):
    """An invariant value that the stick-number bounds rule out; means a bug upstream."""
