from fastapi import HTTPException


class ComponentError(HTTPException):
    """Base exception for every domain error; carries the CLI exit code"""
    exit_code = 1


class InputError(ComponentError):
    """Base exception for malformed or unusable input data"""
    exit_code = 2

    def __init__(self, message: str):
        super().__init__(status_code=422, detail=message)


class ConfigError(ComponentError):
    exit_code = 3

    def __init__(self, key: str, reason: str):
        self.key = key
        super().__init__(status_code=422, detail=f"Invalid configuration for '{key}': {reason}")


class DivergenceError(ComponentError):
    """Base exception for training runs that stopped being numerically meaningful"""
    exit_code = 4


# Series-related exceptions
class NonFiniteError(InputError):
    def __init__(self, index: int):
        self.index = index
        super().__init__(f"Sample at index {index} is not finite")


class TooShortError(InputError):
    def __init__(self, length: int):
        super().__init__(f"Series has {length} samples, at least 2 are required")


# Change space exceptions
class OutOfSupportError(InputError):
    def __init__(self, t: int, delta: int, length: int):
        super().__init__(f"Index {t} is outside the support of scale {delta} for a series of length {length}")


class UnknownScaleError(InputError):
    def __init__(self, delta: int, scales: tuple[int, ...]):
        self.delta = delta
        super().__init__(f"Scale {delta} is not one of the configured scales {list(scales)}")


class NoValidScaleError(InputError):
    def __init__(self, length: int, smallest_scale: int | None = None):
        message = f"No configured scale fits a series of length {length}"
        if smallest_scale is not None:
            message += f" (smallest scale {smallest_scale} needs at least {2 * smallest_scale} samples)"
        super().__init__(message)


class KTooLargeError(InputError):
    def __init__(self, k: int, length: int):
        super().__init__(f"Cannot split a series of length {length} into {k} segments")


class SegmentCountError(ConfigError):
    def __init__(self, k: int, reason: str = "segment count must lie in [2, 50]"):
        super().__init__("segment_count", f"{k}: {reason}")


class EmptyTrainingSetError(InputError):
    def __init__(self):
        super().__init__("Training set is empty")


class UnlabeledSeriesError(InputError):
    def __init__(self, series_id: str):
        super().__init__(f"Series '{series_id}' has no class label")


# Tokenizer exceptions
class SegmentTooLongError(InputError):
    def __init__(self, index: int, length: int, padded_length: int):
        super().__init__(f"Segment {index} has {length} samples, more than the padded length {padded_length}")


class MaskIndexError(InputError):
    def __init__(self, index: int, k: int):
        super().__init__(f"Mask index {index} is out of range for {k} tokens")


# Encoder exceptions
class DimensionMismatchError(InputError):
    def __init__(self, expected: int, received: int, what: str = "token length"):
        super().__init__(f"Expected {what} {expected}, received {received}")


class LabelOutOfRangeError(InputError):
    def __init__(self, label: int, n_classes: int):
        super().__init__(f"Label {label} is out of range for {n_classes} classes")


class NonFiniteGradientError(DivergenceError):
    def __init__(self, epoch: int, parameter: str):
        self.epoch = epoch
        self.parameter = parameter
        super().__init__(
            status_code=500,
            detail=f"Non-finite gradient for '{parameter}' at epoch {epoch}, training diverged",
        )


class CheckpointError(InputError):
    def __init__(self, path, reason: str):
        super().__init__(f"Cannot load checkpoint '{path}': {reason}")


# Evaluation exceptions
class PartitionMismatchError(InputError):
    def __init__(self, reason: str):
        super().__init__(f"Segments do not tile the series: {reason}")


class LengthMismatchError(InputError):
    def __init__(self, left: int, right: int):
        super().__init__(f"Length mismatch: {left} predictions for {right} labels")


class EmptyInputError(InputError):
    def __init__(self, what: str = "input"):
        super().__init__(f"Empty {what}")


# Ingestion exceptions
class ParseError(InputError):
    def __init__(self, line: int, column: int, reason: str):
        self.line = line
        self.column = column
        self.reason = reason
        super().__init__(f"Line {line}, column {column}: {reason}")


class EmptyFileError(InputError):
    def __init__(self, path):
        super().__init__(f"File '{path}' contains no series")


class TooFewSeriesError(InputError):
    def __init__(self, count: int):
        super().__init__(f"Need at least 2 series to split, got {count}")


class MissingFileError(InputError):
    def __init__(self, path):
        super().__init__(f"File '{path}' does not exist")
