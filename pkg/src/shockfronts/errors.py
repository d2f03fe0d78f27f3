"""Exception hierarchy for the shockfronts package.

Every error raised by the library derives from :class:`WavefrontError`, so
callers can catch one base class at CLI boundaries.
"""


class WavefrontError(Exception):
    """Base class for all shockfronts errors."""


class StructureViolation(WavefrontError):
    """The supplied (P, g) data does not have the required sign structure."""


class RegimeError(WavefrontError):
    """An operation was requested in a potential regime where it is undefined."""


class DomainError(WavefrontError):
    """An evaluation point lies outside the admissible domain of the operation."""


class ParamError(WavefrontError):
    """Invalid parameters for the built-in population-invasion model."""


class IntegrationFailure(WavefrontError):
    """The ODE integrator stopped before reaching the target abscissa."""


class NonNegativeExcursion(WavefrontError):
    """A z-branch crossed into z > 0, which the problem forbids."""


class BracketFailure(WavefrontError):
    """No sign change of the jump functional within the speed search cap."""


class PreconditionError(WavefrontError):
    """A stated precondition of the operation does not hold for this model."""


class ConsistencyError(WavefrontError):
    """Input objects are mutually inconsistent (for example jump conditions)."""
