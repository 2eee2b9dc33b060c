class ConnectEError(Exception):
    """Base class for every error raised by connecte."""


class ConfigurationError(ConnectEError, ValueError):
    """Raised when hyperparameters or sizes are invalid"""

    pass


class NumericalError(ConnectEError):
    """Raised when an objective produces a non-finite loss."""

    def __init__(self, objective, epoch, batch_index, value):
        self.objective = objective
        self.epoch = epoch
        self.batch_index = batch_index
        self.value = value

    def __str__(self):
        return "Non-finite {o} loss ({v}) at epoch {e}, batch {b}".format(
            o=self.objective, v=self.value, e=self.epoch, b=self.batch_index
        )


class DataError(ConnectEError):
    """
    General exception raised when input data or artifacts cannot be used
    """

    pass


class TsvParseError(DataError):
    """Raised if a TSV record does not have the expected number of fields."""

    def __init__(self, path, line_number, expected, found):
        self.path = path
        self.line_number = line_number
        self.expected = expected
        self.found = found

    def __str__(self):
        return "{p}:{n}: expected {e} fields, found {f}".format(
            p=self.path, n=self.line_number, e=self.expected, f=self.found
        )


class VocabularyError(DataError):
    """Raised if a surface form is not present in a frozen vocabulary."""

    def __init__(self, name, kind, suggestions=(), path=None, line_number=None):
        self.name = name
        self.kind = kind
        self.suggestions = tuple(suggestions)
        self.path = path
        self.line_number = line_number

    def __str__(self):
        where = f"{self.path}:{self.line_number}: " if self.path else ""
        msg = f"{where}unknown {self.kind} '{self.name}'"
        if self.suggestions:
            msg = f"{msg}; did you mean: {', '.join(self.suggestions)}"
        return msg


class CheckpointFormatError(DataError):
    """Raised when a checkpoint file is missing, truncated or has the wrong magic/version"""

    def __init__(self, path, reason):
        self.path = path
        self.reason = reason

    def __str__(self):
        return f"Invalid checkpoint file {self.path}: {self.reason}"


class CheckpointDimensionError(DataError):
    """Raised when a matrix file disagrees with the dimensions recorded in the manifest."""

    def __init__(self, matrix, expected, found):
        self.matrix = matrix
        self.expected = tuple(expected)
        self.found = tuple(found)

    def __str__(self):
        return "Matrix '{m}' has shape {f}, manifest expects {e}".format(
            m=self.matrix, f=self.found, e=self.expected
        )


class EvaluationError(DataError):
    pass


class ClassificationError(EvaluationError):
    """Raised for degenerate classification splits"""

    pass
