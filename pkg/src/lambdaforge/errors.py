"""Exception types shared across the package."""


class LambdaForgeError(Exception):
    """Base class for all package errors."""


class MismatchError(LambdaForgeError):
    """Operands live over different rings, models, groups or orders."""


class RingCapabilityError(LambdaForgeError):
    """An operation needs a ring capability (e.g. rational scaling) that the
    target ring does not provide."""


class EvaluationError(LambdaForgeError):
    """Polynomial evaluation failed (missing assignment, bad coefficient)."""


class NotSymmetricError(LambdaForgeError):
    """Input polynomial is not symmetric under the required variable swaps."""


class ModelConstructionError(LambdaForgeError):
    """A graded-algebra model failed its construction-time validation."""


class NotExactError(LambdaForgeError):
    """A form expected to be a differential image is not one."""
