"""Fréchet distances, Gaussian vertex projections and sublinear 1-median
sampling for high-dimensional polygonal curves."""

from .curves import (
    Curve,
    CurveSet,
    alpha,
    alpha_pair,
    as_curve,
    as_curve_set,
    segment_pair_distance_sq,
    validate_curve,
)
from .embedding import (
    DistortionRecord,
    GaussianEmbedding,
    PCAEmbedding,
    ProjectionMatrix,
    embed_curve,
    embed_curveset,
    gaussian_projection,
    measure_distortion,
    pca_projection,
    target_dimension,
    distortion_bounds,
)
from .exceptions import (
    DimensionMismatch,
    DimensionTooSmall,
    EmptyCurve,
    EmptySet,
    FrechetRPError,
    InsufficientData,
    InvalidEpsilon,
    NoEligiblePair,
    NonFiniteCoordinate,
    ParseError,
    ValidationError,
)
from .frechet import (
    DistanceQuery,
    FreeSpaceDiagram,
    decide_frechet,
    discrete_frechet,
    distance_matrix,
    frechet_distance,
    free_space_diagram,
)
from .generators import (
    MedianTestSet,
    additive_error_pair,
    disjointness_gadget,
    equality_gadget,
    median_test_set,
    simplex_curves,
)
from .io import read_curve_csv, read_curveset_dir, write_curve_csv, write_curveset_dir
from .median import (
    FrechetMedian,
    MedianParams,
    MedianResult,
    exhaustive_median,
    median_cost,
    sample_sizes,
    sampled_median,
    witness_tail_check,
)

__version__ = "0.1.0"
