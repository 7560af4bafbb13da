class DatalogError(Exception):
    """Base class for all errors raised by earleylog."""


class ParseError(DatalogError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column


class ValidationError(DatalogError):
    """A syntactically fine program or database violates a semantic rule."""


class RangeRestrictionError(ValidationError):
    pass


class ArityError(ValidationError):
    pass


class InvalidState(DatalogError):
    """Two rules of a symbolic state share one schema."""

    def __init__(self, state, witnesses):
        a, b = witnesses
        super().__init__(f"rules {a} and {b} have the same schema")
        self.state = state
        self.witnesses = witnesses


class CompilationFailed(DatalogError):
    def __init__(self, message: str, *, state=None, witnesses=(), path=()):
        super().__init__(message)
        self.state = state
        self.witnesses = tuple(witnesses)
        self.path = tuple(path)


class UnknownPredicate(DatalogError):
    pass
