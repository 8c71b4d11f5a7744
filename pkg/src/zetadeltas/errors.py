"""Exception hierarchy.

Every error raised by the library derives from :class:`ZetaDeltasError`
so the command line layer can map them to exit codes in one place.
"""


class ZetaDeltasError(Exception):
    pass


class ParseError(ZetaDeltasError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class OrderError(ZetaDeltasError, ValueError):
    def __init__(self, message, index=None, line=None):
        self.index = index
        self.line = line
        super().__init__(message)


class EmptyInputError(ZetaDeltasError, ValueError):
    pass


class SpanError(ZetaDeltasError, ValueError):
    pass


class BoundsError(ZetaDeltasError, IndexError):
    pass


class DomainError(ZetaDeltasError, ValueError):
    pass


class InputError(ZetaDeltasError, ValueError):
    pass


class LagError(ZetaDeltasError, ValueError):
    pass


class RangeError(ZetaDeltasError, ValueError):
    pass


class DegenerateSampleError(ZetaDeltasError, ValueError):
    pass


class InsufficientDataError(ZetaDeltasError, ValueError):
    pass
