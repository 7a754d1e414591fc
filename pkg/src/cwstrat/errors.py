"""Exception types shared across the package."""


class MalformedInputError(ValueError):
    """An input document cannot be interpreted as a cell complex."""


class PreconditionError(ValueError):
    """An operation was invoked outside its contract."""


class InvariantViolationError(RuntimeError):
    """An internal consistency check failed.

    Signals either a bug or an input that silently violated a structural
    assumption (e.g. a non-regular complex slipping past shallow checks).
    """


class ValidationFailure(Exception):
    """A complex failed validation before stratification."""

    def __init__(self, report):
        super().__init__(report.summary())
        self.report = report
