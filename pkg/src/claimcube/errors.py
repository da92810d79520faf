"""Exception types shared across the package."""


class ParameterError(ValueError):
    """Raised when a distribution, model or configuration parameter is invalid."""


class EstimationError(ValueError):
    """Raised when an estimator cannot be computed from the available data."""
