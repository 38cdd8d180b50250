"""Distance-to-kernel transforms, embeddings and the Euclidean test.

The Gower transform of a dissimilarity matrix ``D`` for a projection
vector ``s`` with ``sum(s) == 1`` is::

    F = (I - 1 s^T) (-D_sq / 2) (I - s 1^T)

``F`` is positive semidefinite exactly when ``D`` is a Euclidean distance
matrix, and in that case ``d_ij^2 = f_ii + f_jj - 2 f_ij`` for every choice
of ``s``. Taking ``s = 1/m`` gives classical double centering.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    InvalidSVector,
    NegativeSquaredDistance,
    NonFiniteEntry,
    NotPositiveSemidefinite,
)
from .symmat import as_kernel, sym_eigen, validate_dissimilarity

EPS_PSD = 1e-8
EPS_SUM = 1e-9


def as_svector(s, m: int | None = None) -> np.ndarray:
    """Validate a projection vector: 1-D, finite, components summing to 1."""
    s = np.array(s, dtype=float, copy=True).ravel()
    if not np.all(np.isfinite(s)):
        raise NonFiniteEntry("s-vector contains NaN or infinite entries")
    if m is not None and s.shape[0] != m:
        raise DimensionMismatch(f"s-vector has length {s.shape[0]}, matrix has {m} rows")
    total = float(s.sum())
    if abs(total - 1.0) > EPS_SUM:
        raise InvalidSVector(f"s-vector components sum to {total!r}, not 1")
    return s


def uniform_svector(m: int) -> np.ndarray:
    return np.full(m, 1.0 / m)


def _gower_from_sq(dsq: np.ndarray, s: np.ndarray) -> np.ndarray:
    # Expanded product: avoids forming the two m x m projectors.
    b = -0.5 * dsq
    bs = b @ s
    c = s @ bs
    f = b - bs[None, :] - bs[:, None] + c
    return 0.5 * (f + f.T)


def gower_transform(d, s) -> np.ndarray:
    """Kernel matrix ``(I - 1 s^T)(-D_sq/2)(I - s 1^T)``.

    ``d`` must be a valid dissimilarity matrix and ``s`` a projection vector
    of matching length. The result need not be PSD; it is PSD iff ``d`` is
    Euclidean.
    """
    d = validate_dissimilarity(d)
    s = as_svector(s, d.shape[0])
    return _gower_from_sq(d * d, s)


def centered_transform(d) -> np.ndarray:
    """Double-centred kernel, i.e. :func:`gower_transform` with ``s = 1/m``."""
    d = validate_dissimilarity(d)
    return _gower_from_sq(d * d, uniform_svector(d.shape[0]))


def squared_distances_from_kernel(f) -> np.ndarray:
    """Raw ``f_ii + f_jj - 2 f_ij``, without clamping or square roots."""
    f = as_kernel(f)
    diag = np.diag(f)
    dsq = diag[:, None] + diag[None, :] - 2.0 * f
    np.fill_diagonal(dsq, 0.0)
    return 0.5 * (dsq + dsq.T)


def recover_distances(f, eps: float = EPS_PSD) -> np.ndarray:
    """Distance matrix implied by a kernel.

    Squared distances down to ``-eps * max(1, max|F|)`` are clamped to zero;
    anything more negative raises NegativeSquaredDistance.
    """
    f = as_kernel(f)
    dsq = squared_distances_from_kernel(f)
    tol = eps * max(1.0, float(np.max(np.abs(f))))
    worst = float(dsq.min())
    if worst < -tol:
        i, j = np.unravel_index(np.argmin(dsq), dsq.shape)
        raise NegativeSquaredDistance(
            f"squared distance ({i},{j}) is {worst:.6g}; not a Gram-like kernel")
    return np.sqrt(np.clip(dsq, 0.0, None))


def pairwise_distances(y) -> np.ndarray:
    """Euclidean distances between the rows of ``y``."""
    y = np.asarray(y, dtype=float)
    diff = y[:, None, :] - y[None, :, :]
    return np.sqrt(np.sum(diff * diff, axis=-1))


@dataclass(frozen=True)
class Embedding:
    """Row ``i`` of ``points`` is the feature-space image of object ``i``."""

    points: np.ndarray
    retained_eigenvalues: np.ndarray

    @property
    def rank(self) -> int:
        return self.points.shape[1]

    def gram(self) -> np.ndarray:
        return self.points @ self.points.T


def embed(f, eps_psd: float = EPS_PSD) -> Embedding:
    """Coordinates ``Y = V diag(sqrt(lambda))`` with ``Y Y^T = F``.

    Eigenvalues at or below ``eps_psd * max(1, |lambda_max|)`` are dropped.
    Raises NotPositiveSemidefinite if the smallest eigenvalue is below
    minus that threshold.
    """
    eig = sym_eigen(f)
    w, v = eig.eigenvalues, eig.eigenvectors
    thresh = eps_psd * max(1.0, abs(float(w[0])))
    if w[-1] < -thresh:
        raise NotPositiveSemidefinite(w[-1])
    keep = w > thresh
    return Embedding(points=v[:, keep] * np.sqrt(w[keep]),
                     retained_eigenvalues=w[keep].copy())


def is_euclidean(d, eps_psd: float = EPS_PSD) -> tuple[bool, float]:
    """Return ``(flag, lambda_min)`` for the double-centred kernel of ``d``."""
    w = sym_eigen(centered_transform(d)).eigenvalues
    lam_min = float(w[-1])
    return lam_min >= -eps_psd * max(1.0, abs(float(w[0]))), lam_min


def schoenberg_exp_kernel(d, gamma: float) -> np.ndarray:
    """Exponential kernel ``exp(-gamma * d^2)``."""
    if not gamma > 0:
        raise ValueError(f"gamma must be positive, got {gamma!r}")
    d = validate_dissimilarity(d)
    return np.exp(-gamma * d * d)
