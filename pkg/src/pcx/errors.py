"""Exception hierarchy shared by every module."""


class PcxError(Exception):
    """Base class; the CLI maps these to exit code 2 unless noted."""

    code = "ERROR"


class ModelMismatch(PcxError):
    code = "MODEL_MISMATCH"


class InvalidCell(PcxError):
    code = "INVALID_CELL"


class InvalidLevel(PcxError):
    code = "INVALID_LEVEL"


class InvalidMatrix(PcxError):
    code = "INVALID_MATRIX"


class GroupMismatch(PcxError):
    code = "GROUP_MISMATCH"


class InvalidElement(PcxError):
    code = "INVALID_ELEMENT"


class PreconditionViolation(PcxError):
    code = "PRECONDITION_VIOLATION"


class CellLimitExceeded(PcxError):
    code = "CELL_LIMIT_EXCEEDED"


class InvariantBreach(PcxError):
    """Raised when an internal consistency check fails; indicates a bug."""

    code = "INVARIANT_BREACH"


class HypothesisFailed(PcxError):
    code = "HYPOTHESIS_FAILED"


class EmptySet(PcxError):
    code = "EMPTY_SET"


class SearchExhausted(PcxError):
    """The witness search ran out of budget. Not a proof of non-paradoxicality."""

    code = "SEARCH_EXHAUSTED"

    def __init__(self, message, bound=None):
        super().__init__(message)
        self.bound = bound


class TooLarge(PcxError):
    code = "TOO_LARGE"


class ParseError(PcxError):
    code = "PARSE_ERROR"
