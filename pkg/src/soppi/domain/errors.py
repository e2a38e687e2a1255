class DimensionError(ValueError):
    pass


class NonFiniteError(ValueError):
    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


class NoViableSamplesError(RuntimeError):
    pass


class DegenerateVarianceError(ValueError):
    pass


class ConfigurationError(ValueError):
    pass


class TrialFailedError(RuntimeError):
    """A trial that raised inside a worker, carrying the worker-side start time."""

    def __init__(self, message: str, started_at):
        super().__init__(message, started_at)
        self.message = message
        self.started_at = started_at

    def __str__(self) -> str:
        return self.message
