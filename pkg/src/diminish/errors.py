"""Semantic exception hierarchy shared by all process modules."""


class DiminishError(Exception):
    """Base class for errors raised by this package."""


class DomainError(DiminishError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ConfigurationError(DiminishError, ValueError):
    """A run configuration or law specification is malformed."""


class StateCorruptionError(DiminishError, RuntimeError):
    """A process state violates an invariant that should be impossible to break."""
