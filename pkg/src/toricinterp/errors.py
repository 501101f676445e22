"""Exception hierarchy.

Everything a caller can trigger with bad input derives from
:class:`DomainError` (a ``ValueError``); :class:`InvariantViolation` is
reserved for states that indicate a bug in this package.
"""


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


class PreconditionError(DomainError):
    """A named precondition failed.

    ``name`` is a short machine-readable tag such as ``"vertical-edge"``.
    """

    def __init__(self, name, message=""):
        self.name = name
        super().__init__(f"{name}: {message}" if message else name)


class VerticalEdgeError(PreconditionError):
    def __init__(self, message="triangle has a vertical edge"):
        super().__init__("vertical-edge", message)


class NormalizationIntegralityError(PreconditionError):
    def __init__(self, message):
        super().__init__("normalization-integrality", message)


class ValidationError(DomainError):
    """Rejected user input (weights, command-line values, text formats)."""


class ConfigurationError(DomainError):
    """Requested configuration is not allowed, e.g. an unlisted prime."""


class InvariantViolation(RuntimeError):
    """An internal mathematical invariant failed. Always a bug."""
