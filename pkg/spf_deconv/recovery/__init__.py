from spf_deconv.recovery.htp import (
    HtpOptions,
    HtpResult,
    LeastSquaresFit,
    hard_threshold,
    htp,
    least_squares_on_support,
    top_support,
)

__all__ = [
    "HtpOptions",
    "HtpResult",
    "LeastSquaresFit",
    "hard_threshold",
    "htp",
    "least_squares_on_support",
    "top_support",
]
