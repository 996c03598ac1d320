"""Exception hierarchy shared by every module of the package."""


class MvError(Exception):
    """Base class for all errors raised by mvder."""


class InvalidSizeError(MvError, ValueError):
    pass


class MalformedTableError(MvError, ValueError):
    pass


class InvalidArgumentError(MvError, ValueError):
    pass


class AlgebraMismatchError(InvalidArgumentError):
    """An operator or element was used with an algebra it does not belong to."""


class NotMvAlgebraError(MvError):
    """Raised when tables that were assumed to satisfy MV1-MV6 turn out not to."""


class ResourceLimitError(MvError):
    """A configured size or search cap was exceeded.  Nothing is truncated."""


class IsomorphismUnknown(ResourceLimitError):
    """The posets are too large to search and their invariants agree."""


class ParseError(MvError, ValueError):
    def __init__(self, message, offset, expected=()):
        self.offset = offset
        self.expected = tuple(expected)
        detail = f"{message} at offset {offset}"
        if self.expected:
            detail += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(detail)
