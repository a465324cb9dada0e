"""Exception types shared across the package."""


class ProlimError(Exception):
    """Base class for all package errors."""


class CompositionError(ProlimError):
    """Source/target mismatch when composing maps."""


class UnsupportedCapabilityError(ProlimError):
    """A base category was asked for a capability it does not declare."""


class BudgetError(ProlimError):
    """A bounded search ran out of budget before meeting its goal.

    Carries ``what`` (the search that failed) so callers can surface the
    violated condition instead of a bare failure.
    """

    def __init__(self, what: str, depth: int | None = None):
        self.what = what
        self.depth = depth
        msg = what if depth is None else f"{what} (depth={depth})"
        super().__init__(msg)


class VerificationFailure(ProlimError):
    """A certificate check failed; ``location`` pinpoints the first bad cell."""

    def __init__(self, message: str, location=None):
        self.location = location
        if location is not None:
            message = f"{message} [at {location!r}]"
        super().__init__(message)


class MissingLubError(ProlimError):
    """An index category lacks a required least upper bound."""


class SpecFileError(ProlimError):
    """Diagram spec file failed to parse or validate."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
