import enum


class CellType(str, enum.Enum):
    LSTM = "lstm"
    RNN = "rnn"


class SegmentationMode(str, enum.Enum):
    CHANGE_SPACE = "change_space"
    UNIFORM = "uniform"


class Normalization(str, enum.Enum):
    ZSCORE = "zscore"
    NONE = "none"


class ReportFormat(str, enum.Enum):
    TEXT = "text"
    CSV = "csv"
