"""Exception types shared across the package."""


class ConfigurationError(ValueError):
    """A scenario or option value is invalid; the message names the entry."""


class ContractViolation(ValueError):
    """A caller broke an API precondition (wrong arity, step after done, ...)."""


class ReplayError(ValueError):
    """A replay file is malformed or truncated."""
