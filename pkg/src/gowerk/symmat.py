"""Square-matrix validation and symmetric eigendecomposition.

Matrices are plain ``numpy.ndarray`` objects. The ``validate_*`` / ``as_*``
helpers check the invariants once and hand back a canonical float64 copy;
everything downstream assumes that copy.

The eigensolver is a cyclic Jacobi method with a round-robin (parallel)
pivot ordering: each of the ``m - 1`` rounds of a sweep rotates ``m // 2``
disjoint index pairs at once, so a sweep costs a handful of vectorised
O(m^2) updates per round instead of O(m^2) Python-level rotations. Jacobi
keeps near-zero eigenvalues accurate to high relative precision, which is
what the Euclidean test depends on.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    AsymmetricInput,
    ConvergenceFailure,
    NegativeEntry,
    NonFiniteEntry,
    NonzeroDiagonal,
    NotSquare,
)

EPS_SYM = 1e-9

# Above this size "auto" hands over to LAPACK (dsyevd); see sym_eigen.
JACOBI_MAX_AUTO = 128


def as_square(raw) -> np.ndarray:
    """Return ``raw`` as a finite float64 square matrix (a copy)."""
    a = np.array(raw, dtype=float, copy=True)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotSquare(f"expected a square matrix, got shape {a.shape}")
    if a.shape[0] == 0:
        raise NotSquare("matrix must have at least one row")
    if not np.all(np.isfinite(a)):
        raise NonFiniteEntry("matrix contains NaN or infinite entries")
    return a


def _scale(a: np.ndarray) -> float:
    return max(1.0, float(np.max(np.abs(a)))) if a.size else 1.0


def _check_symmetric(a: np.ndarray, eps: float) -> None:
    tol = eps * _scale(a)
    dev = float(np.max(np.abs(a - a.T)))
    if dev > tol:
        i, j = np.unravel_index(np.argmax(np.abs(a - a.T)), a.shape)
        raise AsymmetricInput(
            f"entries ({i},{j}) and ({j},{i}) differ by {dev:.3g} (> {tol:.3g})")


def validate_dissimilarity(raw, eps_sym: float = EPS_SYM) -> np.ndarray:
    """Check and canonicalise a dissimilarity matrix.

    The result is symmetrised as ``(D + D.T) / 2`` and its diagonal is set
    to exactly zero. Diagonal entries may deviate from zero by at most
    ``eps_sym * max(1, max|D|)`` before that happens.

    Raises
    ------
    NotSquare, NonFiniteEntry, AsymmetricInput, NonzeroDiagonal, NegativeEntry
    """
    d = as_square(raw)
    _check_symmetric(d, eps_sym)
    tol = eps_sym * _scale(d)
    diag = np.abs(np.diag(d))
    if np.any(diag > tol):
        i = int(np.argmax(diag))
        raise NonzeroDiagonal(f"diagonal entry {i} is {d[i, i]:.6g}")
    d = 0.5 * (d + d.T)
    np.fill_diagonal(d, 0.0)
    if np.any(d < 0):
        i, j = np.unravel_index(np.argmin(d), d.shape)
        raise NegativeEntry(f"entry ({i},{j}) is negative: {d[i, j]:.6g}")
    return d


def as_kernel(raw, eps_sym: float = EPS_SYM) -> np.ndarray:
    """Validate a kernel (Gram-like) matrix and return ``(F + F.T) / 2``."""
    f = as_square(raw)
    _check_symmetric(f, eps_sym)
    return 0.5 * (f + f.T)


@dataclass(frozen=True)
class EigenDecomposition:
    """Spectrum sorted in descending order; ``eigenvectors[:, j]`` pairs
    with ``eigenvalues[j]``."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.T


def _round_robin(m: int) -> list[tuple[np.ndarray, np.ndarray]]:
    # Circle method: every unordered pair appears in exactly one round.
    n = m + (m % 2)
    players = list(range(n))
    rounds = []
    for _ in range(n - 1):
        p, q = [], []
        for k in range(n // 2):
            a, b = players[k], players[n - 1 - k]
            if a < m and b < m:
                p.append(min(a, b))
                q.append(max(a, b))
        rounds.append((np.array(p, dtype=int), np.array(q, dtype=int)))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def jacobi_eigh(a, max_sweeps: int = 60, tol: float | None = None):
    """Cyclic Jacobi eigensolver for a real symmetric matrix.

    Returns ``(w, v)`` in no particular order. Stops once the off-diagonal
    Frobenius norm drops to ``tol * ||A||_F`` (machine epsilon by default).
    """
    a = np.array(a, dtype=float, copy=True)
    m = a.shape[0]
    v = np.eye(m)
    if m == 1:
        return a.diagonal().copy(), v
    if tol is None:
        tol = np.finfo(float).eps
    norm = np.linalg.norm(a)
    if norm == 0.0:
        return np.zeros(m), v
    rounds = _round_robin(m)
    offmask = ~np.eye(m, dtype=bool)
    for sweep in range(max_sweeps + 1):
        off = np.sqrt(np.sum(a[offmask] ** 2))
        if off <= tol * norm:
            return a.diagonal().copy(), v
        if sweep == max_sweeps:
            break
        for p, q in rounds:
            apq = a[p, q]
            active = apq != 0.0
            if not np.any(active):
                continue
            app, aqq = a[p, p], a[q, q]
            theta = np.divide(aqq - app, 2.0 * apq, out=np.zeros_like(apq), where=active)
            t = np.sign(theta) / (np.abs(theta) + np.hypot(theta, 1.0))
            t[theta == 0.0] = 1.0
            t[~active] = 0.0
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            # A <- R^T A R, then V <- V R; the pairs are disjoint so all
            # rotations of the round commute.
            ap, aq = a[:, p].copy(), a[:, q].copy()
            a[:, p] = c * ap - s * aq
            a[:, q] = s * ap + c * aq
            ap, aq = a[p, :].copy(), a[q, :].copy()
            a[p, :] = c[:, None] * ap - s[:, None] * aq
            a[q, :] = s[:, None] * ap + c[:, None] * aq
            a[p, q] = 0.0
            a[q, p] = 0.0
            vp, vq = v[:, p].copy(), v[:, q].copy()
            v[:, p] = c * vp - s * vq
            v[:, q] = s * vp + c * vq
    raise ConvergenceFailure(f"Jacobi did not converge in {max_sweeps} sweeps")


def _normalise(w: np.ndarray, v: np.ndarray) -> EigenDecomposition:
    order = np.argsort(-w, kind="stable")
    w = w[order]
    v = v[:, order]
    idx = np.argmax(np.abs(v), axis=0)
    signs = np.where(v[idx, np.arange(v.shape[1])] < 0, -1.0, 1.0)
    return EigenDecomposition(eigenvalues=w, eigenvectors=v * signs)


def sym_eigen(a, method: str = "auto", max_sweeps: int = 60) -> EigenDecomposition:
    """Full eigendecomposition of a symmetric matrix.

    Parameters
    ----------
    a : array_like
        Symmetric matrix; validated with :func:`as_kernel`.
    method : {"auto", "jacobi", "lapack"}
        ``"auto"`` uses Jacobi up to ``JACOBI_MAX_AUTO`` rows and LAPACK
        beyond that.
    max_sweeps : int
        Iteration cap for Jacobi; exceeding it raises ConvergenceFailure.

    Returns
    -------
    EigenDecomposition
        Eigenvalues descending. Each eigenvector is flipped so that its
        largest-magnitude component is positive.
    """
    a = as_kernel(a)
    if method == "auto":
        method = "jacobi" if a.shape[0] <= JACOBI_MAX_AUTO else "lapack"
    if method == "jacobi":
        w, v = jacobi_eigh(a, max_sweeps=max_sweeps)
    elif method == "lapack":
        try:
            w, v = np.linalg.eigh(a)
        except np.linalg.LinAlgError as exc:
            raise ConvergenceFailure(str(exc)) from exc
    else:
        raise ValueError(f"unknown method {method!r}")
    return _normalise(w, v)


def min_eigenvalue(a, method: str = "auto") -> float:
    return float(sym_eigen(a, method=method).eigenvalues[-1])
