"""Exception types shared across the workbench."""


class KpzlabError(Exception):
    """Base class for workbench-specific errors."""


class ParameterError(KpzlabError, ValueError):
    """A numeric parameter is outside its legal domain."""


class NoActiveEventError(KpzlabError, RuntimeError):
    """An event-driven step was requested on an empty event set."""


class FrozenStateError(KpzlabError, RuntimeError):
    """No eligible event exists under the current dynamics; the state is absorbed."""


class NotPositiveRecurrentError(KpzlabError, ValueError):
    """The requested stationary law does not exist for these rates (needs p < q)."""


class WindowTooSmallError(KpzlabError, ValueError):
    """Simulation window cannot contain the growth cone for the requested horizon."""


class InvariantViolationError(KpzlabError, RuntimeError):
    """A structural invariant (slope sequence, exclusion, ...) was violated."""


class InsufficientDataError(KpzlabError, ValueError):
    """An estimator was called with too few points or replicates."""


class DegenerateSampleError(KpzlabError, ValueError):
    """A sample has zero variance where a scale is required."""


class RangeError(KpzlabError, ValueError):
    """Evaluation requested outside a documented validity window."""


class CoverageError(KpzlabError, ValueError):
    """A random environment does not cover the region a walk can reach."""


class DiagnosticsError(KpzlabError, RuntimeError):
    """A diagnostic fit cannot run (e.g. tail resolution too shallow)."""


class SchemaError(KpzlabError, ValueError):
    """A file or config does not match its documented schema."""


class ConfigError(SchemaError):
    """Experiment config failed validation; message carries the field path."""


class GoldenMismatchError(KpzlabError, RuntimeError):
    """A regenerated table differs from the committed golden beyond tolerance."""
