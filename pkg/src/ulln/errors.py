"""Exception types shared across the package."""


class UllnError(Exception):
    """Base class for all package-specific errors."""


class InvalidParameter(UllnError, ValueError):
    """A scheme, family, or experiment parameter is outside its valid range."""


class AnalyticUnavailable(UllnError):
    """No closed form exists; the caller must request Monte Carlo explicitly."""


class EnumerationBudgetExceeded(UllnError):
    """Exact enumeration would exceed the configured support-size budget."""


class ContinuousKind(UllnError):
    """The scheme has continuous support and cannot be enumerated exactly."""


class GridOverflow(UllnError):
    """The orthant-check cut-point grid is too large to evaluate."""


class MixedMonotonicity(UllnError):
    """Per-coordinate transforms mix increasing and decreasing directions."""


class IntegrationFailure(UllnError):
    """Numerical integration failed to meet the requested error tolerance."""


class NetCapExceeded(UllnError):
    """A covering net would contain more centers than the configured cap."""


class NonFiniteEvaluation(UllnError):
    """A function family produced a non-finite value; carries a witness."""


class DegenerateSummary(UllnError):
    """A rate fit was requested on summaries containing zeros (log undefined)."""


class GammaBelowOne(UllnError):
    """The Borel-Cantelli exponent gamma is <= 1; outside the fast-rate regime."""


class ConfigError(UllnError, ValueError):
    """A config file is malformed or violates a module invariant."""


class PrecheckViolated(UllnError):
    """Condition prechecks reported `violated` and no override was given."""
