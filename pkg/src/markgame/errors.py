"""Exception hierarchy shared by the package."""


class MarkGameError(Exception):
    """Base class for all package errors."""


class InputError(MarkGameError, ValueError):
    """Malformed or out-of-range input."""


class DomainError(InputError):
    """Parameters outside the domain of a closed-form bound."""


class CapacityError(MarkGameError):
    """Instance too large for an exhaustive routine."""


class RuleViolation(MarkGameError):
    """A move that the marking game does not allow."""


class StateError(MarkGameError):
    """Operation requested in a game state where it is undefined."""


class StrategyFault(MarkGameError):
    """A strategy produced an invalid move."""

    def __init__(self, strategy, message):
        super().__init__(f"strategy {strategy!r}: {message}")
        self.strategy = strategy
