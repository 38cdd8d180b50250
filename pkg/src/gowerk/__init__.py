"""Distance matrices to kernels, Euclidean repair, and kernel k-means."""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .euclidesation import (
    EuclidesationReport,
    euclidise,
    gower_sigma,
    max_triangle_violation,
    metric_constant,
    metricize,
    shift_squared,
)
from .kkmeans import (
    Clustering,
    canonical_labels,
    cost_of,
    exhaustive_best,
    kmeans_points,
    lloyd,
    optimal_partitions,
    point_to_centroid_sq,
    point_to_weighted_centroid_sq,
    shift_cost_check,
    weighted_cost_of,
)
from .symmat import (
    EigenDecomposition,
    as_kernel,
    min_eigenvalue,
    sym_eigen,
    validate_dissimilarity,
)
from .transforms import (
    Embedding,
    as_svector,
    centered_transform,
    embed,
    gower_transform,
    is_euclidean,
    pairwise_distances,
    recover_distances,
    schoenberg_exp_kernel,
    uniform_svector,
)
