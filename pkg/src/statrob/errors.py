"""Exception types shared across the package."""


class StatrobError(Exception):
    """Base class for all package-specific errors."""


class ConfigError(StatrobError):
    """Invalid model, estimator, or job configuration."""


class LoadError(StatrobError):
    """Weight file failed to parse or validate."""


class DivergedRunError(StatrobError):
    """Splitting run hit the level cap without terminating.

    Carries the partial trace so callers can inspect how far the run got
    before progress stalled.
    """

    def __init__(self, message, levels, level_factors, log_estimate):
        super().__init__(message)
        self.levels = [float(v) for v in levels]
        self.level_factors = [float(v) for v in level_factors]
        self.log_estimate = float(log_estimate)
