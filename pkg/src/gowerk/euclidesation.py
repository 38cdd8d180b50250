"""Turning non-Euclidean dissimilarities into Euclidean or metric ones.

The repair adds ``2 * sigma`` to every off-diagonal squared dissimilarity,
``d'_ij = sqrt(d_ij^2 + 2 sigma)``, with ``sigma = -lambda_min`` of the
double-centred kernel. The centred kernel then becomes
``F + sigma * (I - 11^T/m)``: every eigenvalue belonging to a zero-sum
eigenvector moves up by ``sigma`` and the constant vector keeps eigenvalue
zero, so the smallest eigenvalue lands exactly on zero.

Adding only ``sigma`` (the classical statement) moves the spectrum by
``sigma / 2`` and in general leaves the matrix non-Euclidean. That variant
is kept under ``mode="original_gower"`` so the failure can be reproduced.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConstantTooSmall
from .symmat import sym_eigen, validate_dissimilarity
from .transforms import EPS_PSD, centered_transform

MODES = ("corrected", "original_gower")


def _centered_spectrum(d: np.ndarray) -> np.ndarray:
    return sym_eigen(centered_transform(d)).eigenvalues


def _sigma_from_spectrum(w: np.ndarray, eps_psd: float) -> float:
    lam_min = float(w[-1])
    if lam_min >= -eps_psd * max(1.0, abs(float(w[0]))):
        return 0.0
    return -lam_min


def gower_sigma(d, eps_psd: float = EPS_PSD) -> float:
    """Minimal additive constant ``max(0, -lambda_min)`` of the centred kernel.

    Returns exactly 0 when ``d`` already passes the Euclidean test at
    tolerance ``eps_psd``.
    """
    d = validate_dissimilarity(d)
    return _sigma_from_spectrum(_centered_spectrum(d), eps_psd)


def shift_squared(d, amount: float) -> np.ndarray:
    """``sqrt(d_ij^2 + amount)`` off the diagonal; the diagonal stays 0."""
    d = validate_dissimilarity(d)
    dsq = d * d + amount
    np.fill_diagonal(dsq, 0.0)
    return np.sqrt(dsq)


@dataclass(frozen=True)
class EuclidesationReport:
    sigma: float
    mode: str
    pre_lambda_min: float
    post_lambda_min: float
    repaired: np.ndarray

    def to_dict(self) -> dict:
        return {
            "sigma": self.sigma,
            "mode": self.mode,
            "pre_lambda_min": self.pre_lambda_min,
            "post_lambda_min": self.post_lambda_min,
        }


def euclidise(d, mode: str = "corrected", eps_psd: float = EPS_PSD) -> EuclidesationReport:
    """Shift squared dissimilarities so that the centred kernel becomes PSD.

    ``mode="corrected"`` adds ``2 * sigma`` and always succeeds.
    ``mode="original_gower"`` adds ``sigma`` only; the report shows the
    resulting (usually still negative) smallest eigenvalue.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    d = validate_dissimilarity(d)
    w = _centered_spectrum(d)
    sigma = _sigma_from_spectrum(w, eps_psd)
    if sigma == 0.0:
        return EuclidesationReport(sigma=0.0, mode=mode, pre_lambda_min=float(w[-1]),
                                   post_lambda_min=float(w[-1]), repaired=d)
    factor = 2.0 if mode == "corrected" else 1.0
    repaired = shift_squared(d, factor * sigma)
    post = _centered_spectrum(repaired)
    return EuclidesationReport(sigma=sigma, mode=mode, pre_lambda_min=float(w[-1]),
                               post_lambda_min=float(post[-1]), repaired=repaired)


def _triple_terms(d: np.ndarray) -> np.ndarray:
    # t[x, y, z] = d(x,y) + d(y,z) - d(z,x)
    return d[:, :, None] + d[None, :, :] - d.T[:, None, :]


def _distinct_mask(m: int) -> np.ndarray:
    i, j, k = np.ogrid[:m, :m, :m]
    return (i != j) & (j != k) & (i != k)


def metric_constant(d) -> float:
    """``max |d(x,y) + d(y,z) - d(z,x)|`` over ordered triples of distinct points.

    Adding this constant to every off-diagonal entry makes any dissimilarity
    matrix satisfy the triangle inequality. It is deliberately loose: the
    absolute value also counts triples that are not violations. Fewer than
    three points give 0.
    """
    d = validate_dissimilarity(d)
    m = d.shape[0]
    if m < 3:
        return 0.0
    return float(np.max(np.abs(_triple_terms(d))[_distinct_mask(m)]))


def max_triangle_violation(d) -> float:
    """Largest ``d(x,z) - d(x,y) - d(y,z)`` over distinct triples.

    Non-positive iff ``d`` satisfies the triangle inequality; 0 for m < 3.
    """
    d = np.asarray(d, dtype=float)
    m = d.shape[0]
    if m < 3:
        return 0.0
    return float(np.max(-_triple_terms(d)[_distinct_mask(m)])) + 0.0


def metricize(d, c: float) -> np.ndarray:
    """Add ``c`` to every off-diagonal entry.

    ``c`` must be at least :func:`metric_constant`; otherwise
    ConstantTooSmall is raised.
    """
    d = validate_dissimilarity(d)
    need = metric_constant(d)
    if c < need:
        raise ConstantTooSmall(f"constant {c!r} is below the required {need!r}")
    out = d + c
    np.fill_diagonal(out, 0.0)
    return out
