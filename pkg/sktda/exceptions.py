"""
This module defines exceptions commonly used in scikit-tda-coint.
"""

EXIT_DATA_ERROR = 3
EXIT_NUMERICAL_FAILURE = 4


class SKTdaError(RuntimeError):
    """Exception raised when an error occurs while analysing a data set.

    ``stage`` is set by :func:`sktda.pipeline.pipeline_stage` when the error
    crosses a pipeline stage boundary.
    """

    exit_code = 1

    def __init__(self, *args):
        super().__init__(*args)
        self.stage = None


class SKTdaDataError(SKTdaError):
    """Exception raised when input data or parameters are unusable."""

    exit_code = EXIT_DATA_ERROR


class SKTdaNumericalError(SKTdaError):
    """Exception raised when a numerical procedure cannot produce a result."""

    exit_code = EXIT_NUMERICAL_FAILURE


class SKTdaParseError(SKTdaDataError):
    """Exception raised when a CSV row cannot be parsed. The message names the line."""


class SKTdaSchemaError(SKTdaDataError):
    """Exception raised when an expected channel label is missing from a CSV header."""


class SKTdaEmptyDataError(SKTdaDataError):
    """Exception raised when no sample survives cleaning."""


class SKTdaInsufficientDataError(SKTdaDataError):
    """Exception raised when a series is too short for the requested operation."""


class SKTdaShapeError(SKTdaDataError):
    """Exception raised on dimension mismatches."""


class SKTdaParameterError(SKTdaDataError):
    """Exception raised when a parameter is out of its valid range."""


class SKTdaOracleSizeError(SKTdaParameterError):
    """Exception raised when a diagram is too large for exhaustive matching."""


class SKTdaDegenerateVarianceError(SKTdaNumericalError):
    """Exception raised when a series has zero sample variance."""


class SKTdaRankDeficiencyError(SKTdaNumericalError):
    """Exception raised when a least-squares design matrix is singular."""


class SKTdaCollinearityError(SKTdaNumericalError):
    """Exception raised when a Johansen moment matrix is singular."""


class SKTdaOrderUndeterminedError(SKTdaNumericalError):
    """Exception raised when no differencing order up to the limit is stationary."""


class SKTdaOptimizationError(SKTdaNumericalError):
    """Exception raised when hyperparameter optimization fails at every start."""


class SKTdaSizeLimitError(SKTdaNumericalError):
    """Exception raised when a filtration exceeds the configured simplex cap."""
