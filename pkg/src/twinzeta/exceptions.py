"""Exception hierarchy for twinzeta."""


class TwinZetaError(Exception):
    """Base class for all library errors."""


class CapacityError(TwinZetaError):
    """A requested table or quadrature exceeds the configured budget."""


class DomainError(TwinZetaError):
    """Arguments outside an operation's documented validity region."""


class ConditioningError(TwinZetaError):
    """The result would be numerically meaningless (near pole or zero)."""


class ZeroTableError(TwinZetaError):
    """A zero table failed parsing or validation."""


class SearchError(TwinZetaError):
    """An exhaustive search ended without a qualifying result."""
