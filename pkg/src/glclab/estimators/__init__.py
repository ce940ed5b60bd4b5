"""Numerical probes of dimension and entropy. Every output is an ESTIMATE and
never feeds back into the certified modules."""

from .entropy import EntropyEstimate, entropy_estimate
from .sampler import SamplerResult, exception_sampler
from .scan import ScanRecord, classical_littlewood_scan, first_zero, records
from .separation import (
    DimensionEstimate,
    PointCloud,
    SeparationCurve,
    box_dimension_estimate,
    cover_count,
    separated_count,
    separation_curve,
)

__all__ = [
    "DimensionEstimate",
    "EntropyEstimate",
    "PointCloud",
    "SamplerResult",
    "ScanRecord",
    "SeparationCurve",
    "box_dimension_estimate",
    "classical_littlewood_scan",
    "cover_count",
    "entropy_estimate",
    "exception_sampler",
    "first_zero",
    "records",
    "separated_count",
    "separation_curve",
]
