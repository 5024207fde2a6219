"""Cumulative differences between paired populations."""

from ._core import (
    AggregatedSamples,
    CumdiffError,
    CumulativeCurve,
    CurveMetrics,
    ReliabilityDiagram,
    aggregate,
    analyze_csv,
    bins_equispaced,
    bins_equivariance,
    break_ties,
    coverage,
    cumulative_curve,
    diagram,
    hilbert_decode,
    hilbert_encode,
    hilbert_score,
    kolmogorov_smirnov,
    kuiper,
    metrics,
    normalize_scores,
    secant_slope,
    sigma_estimate,
    synth,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
