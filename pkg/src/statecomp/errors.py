"""Exception types shared across the package."""


class BudgetError(RuntimeError):
    """A construction would exceed a configured size budget."""

    def __init__(self, message, required=None, budget=None):
        super().__init__(message)
        self.required = required
        self.budget = budget


class InvalidLetterError(ValueError):
    pass


class IncomparableAlphabetsError(ValueError):
    pass


class ParseError(ValueError):
    """Malformed automaton document. ``path`` names the offending field."""

    def __init__(self, path, message):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path
