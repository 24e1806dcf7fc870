from spf_deconv.operator.interfaces import LinearMap
from spf_deconv.operator.maps import ConvolutionMap, DenseMap
from spf_deconv.operator.measurement import (
    ORACLE_CAP,
    MeasOperator,
    SamplingPattern,
    circular_convolve,
    subsample,
)

__all__ = [
    "ORACLE_CAP",
    "ConvolutionMap",
    "DenseMap",
    "LinearMap",
    "MeasOperator",
    "SamplingPattern",
    "circular_convolve",
    "subsample",
]
