"""Exception types shared across the package."""


class CurveSpaceError(Exception):
    """Base class for all library errors."""


class DomainError(CurveSpaceError, ValueError):
    """An argument left the mathematically valid domain (bad radius, off-surface point...)."""


class ImmersionError(DomainError):
    """The sampled curve fails the immersion condition (vanishing derivative)."""


class NormalityError(DomainError):
    """An operation that requires a normal path was called on one with a tangential component."""


class PreconditionError(DomainError):
    """A stated operation precondition does not hold."""


class CapabilityError(CurveSpaceError):
    """The requested combination is outside what the toolkit implements."""


class NumericFailure(CurveSpaceError, RuntimeError):
    """Non-convergence, singularity, or blow-up inside a numerical routine."""


class OptimizationFailure(NumericFailure):
    """The derivative-free search found no feasible point within its restart budget."""


class InputFormatError(CurveSpaceError, ValueError):
    """An input file does not match the documented JSON/CSV schema."""
