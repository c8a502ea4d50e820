"""Exception hierarchy shared by every module.

The CLI maps :class:`UsageError` subclasses to exit code 2 and every other
:class:`QuadPropError` to exit code 1.
"""


class QuadPropError(Exception):
    """Base class for all library errors."""


class UsageError(QuadPropError):
    """Bad model name, parameter or configuration supplied by the caller."""


class UnknownModel(UsageError):
    pass


class InvalidParameter(UsageError):
    pass


class ConfigError(UsageError):
    pass


class OutOfDomain(QuadPropError):
    pass


class Singularity(QuadPropError):
    pass


class IntegrationFailure(QuadPropError):
    pass


class UnstableStep(IntegrationFailure):
    pass


class NoClosedForm(QuadPropError):
    pass


class NonConvergence(QuadPropError):
    pass


class Caustic(QuadPropError):
    """The kernel degenerates: mu0(t) vanishes, or 2*mu0*gamma does for plane waves."""


class QuadratureFailure(QuadPropError):
    pass


class AmbiguousClosedForm(QuadPropError):
    pass


class AllSamplesCaustic(QuadPropError):
    pass


class GaussianConditionViolated(QuadPropError):
    pass


class OutOfRange(QuadPropError):
    pass


class ParityMismatch(QuadPropError):
    pass


class TailBoundExceeded(QuadPropError):
    pass


class EmptyWindow(QuadPropError):
    pass


class IoFailure(QuadPropError):
    pass
