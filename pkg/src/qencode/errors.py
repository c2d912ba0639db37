"""Exception hierarchy. Every error raised on bad input derives from EncodingError."""


class EncodingError(ValueError):
    pass


class RangeError(EncodingError):
    """Value outside the interval an encoder accepts (includes basis-index overflow)."""


class ShapeError(EncodingError):
    """Register, image or index shape does not fit the operation."""


class DegenerateInputError(EncodingError):
    """Zero vectors, empty part lists, all-zero weights."""


class DomainError(EncodingError):
    """Label or option not in the allowed set."""


class FormatError(EncodingError):
    """State or file is not of the expected form."""


class GraphFormatError(FormatError):
    pass


class UnsupportedRegisterError(EncodingError):
    pass


class UnsupportedDepthError(EncodingError):
    pass


class UnsupportedLayoutError(EncodingError):
    pass


class UnsupportedSignError(EncodingError):
    pass


class EmptyBranchError(EncodingError):
    pass


class SamplingTimeoutError(EncodingError):
    pass
