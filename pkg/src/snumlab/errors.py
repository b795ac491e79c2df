"""Exception types shared across the package.

All precondition failures derive from PreconditionError so the CLI can map
them to a dedicated exit code.
"""


class SnumlabError(Exception):
    pass


class ConfigError(SnumlabError):
    """Malformed or inconsistent sweep configuration."""


class PreconditionError(SnumlabError, ValueError):
    """An operation was called outside its stated domain."""


class UnsupportedEndpointError(PreconditionError):
    """The endpoint pair (p1, p2) = (1, inf) is excluded from this operation."""


class UnsupportedBoundaryError(PreconditionError):
    """Parameters sit exactly on a regime boundary where no rate is available."""


class ThresholdRangeError(PreconditionError):
    """A counting threshold exceeds the range the enumeration box can answer
    without truncation bias."""


class MemoryBudgetError(PreconditionError):
    """An enumeration would exceed the configured point-count cap."""


class DegenerateFitError(PreconditionError):
    """The sample grid cannot support a rate fit (too short or collinear)."""
