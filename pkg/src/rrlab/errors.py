"""Exception hierarchy; every computational error carries a machine-readable code."""


class RRLabError(Exception):
    code = "ERROR"

    def __init__(self, message="", **data):
        super().__init__(message)
        self.data = data


class ParseError(RRLabError, ValueError):
    code = "PARSE_ERROR"


class RingMismatch(RRLabError, ValueError):
    code = "RING_MISMATCH"


class NotMPrimary(RRLabError):
    code = "NOT_M_PRIMARY"


class NotContained(RRLabError):
    code = "NOT_CONTAINED"


class NoStabilization(RRLabError):
    code = "NO_STABILIZATION"


class NotAReduction(RRLabError):
    code = "NOT_A_REDUCTION_WITHIN_CAP"


class SearchFailed(RRLabError):
    code = "SEARCH_FAILED"


class SuperficialSearchFailed(SearchFailed):
    code = "SUPERFICIAL_SEARCH_FAILED"


class NoStableFit(RRLabError):
    code = "NO_STABLE_FIT"


class NegativeLength(RRLabError):
    code = "NEGATIVE_LENGTH"


class UnsupportedDimension(RRLabError):
    code = "UNSUPPORTED_DIMENSION"


class HypothesisFailed(RRLabError):
    code = "HYPOTHESIS_FAILED"


class MethodDisagreement(RRLabError):
    code = "METHOD_DISAGREEMENT"
