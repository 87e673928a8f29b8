"""
Exception hierarchy for EasyDamas.

Every error raised by the library derives from EasyDamasError so the CLI can
report it with a stage tag and a non-zero exit code.
"""


class EasyDamasError(Exception):
    """Base class for all EasyDamas errors."""


class ConfigurationError(EasyDamasError, ValueError):
    """Invalid geometry, grid or run configuration."""


class InputError(EasyDamasError, ValueError):
    """Invalid input data (scene, map, file contents)."""


class DimensionError(InputError):
    """Array dimensions do not agree."""

    def __init__(self, what: str, expected: object, actual: object):
        self.what = what
        self.expected = expected
        self.actual = actual
        super().__init__(f"{what}: expected {expected}, got {actual}")


class StateError(EasyDamasError):
    """Operation not allowed in the current state of the object."""


class SingularityError(EasyDamasError):
    """A focus point coincides with a microphone."""

    def __init__(self, point_index: int, mic_index: int):
        self.point_index = point_index
        self.mic_index = mic_index
        super().__init__(
            f"Grid point {point_index} coincides with microphone {mic_index} (|r - r_m| = 0)"
        )


class ResourceError(EasyDamasError):
    """Requested matrix does not fit into the configured memory budget."""

    def __init__(self, requested_bytes: int, budget_bytes: int, advice: str):
        self.requested_bytes = requested_bytes
        self.budget_bytes = budget_bytes
        self.advice = advice
        super().__init__(
            f"Matrix needs {requested_bytes / 2**20:.1f} MiB, budget is "
            f"{budget_bytes / 2**20:.1f} MiB. {advice}"
        )


class SolverError(EasyDamasError):
    """The linear system cannot be handled by the solver."""


class NumericError(EasyDamasError):
    """A non-finite value appeared during computation."""


class StageError(EasyDamasError):
    """Failure of one pipeline stage, tagged with the stage name."""

    def __init__(self, stage: str, cause: BaseException):
        self.stage = stage
        self.cause = cause
        super().__init__(f"[{stage}] {cause}")


class OutputError(EasyDamasError):
    """An artifact could not be written."""
