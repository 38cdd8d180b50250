"""Kernel k-means with the kernel trick.

Points are indexed from 0; cluster labels in public results run from 1 to
``k`` and are canonical: clusters are numbered in order of first
appearance, so ``[2, 2, 1]`` and ``[1, 1, 2]`` are both reported as
``[1, 1, 2]``.

The squared distance from point ``i`` to the mean of cluster ``C`` needs
only kernel entries::

    k_ii - (2/|C|) sum_{h in C} k_hi + (1/|C|^2) sum_{r,s in C} k_rs

and the total k-means cost of a partition is therefore
``trace(K) - sum_j (z_j^T K z_j) / |C_j|`` for cluster indicator vectors
``z_j``.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import islice

import numpy as np

from .errors import (
    EmptyCluster,
    KTooLarge,
    LabelOutOfRange,
    ShiftLawViolation,
    TooManyPoints,
    ZeroWeightCluster,
)
from .symmat import as_kernel
from .transforms import _gower_from_sq, squared_distances_from_kernel, uniform_svector

EXHAUSTIVE_MAX_POINTS = 12
TIE_RTOL = 1e-9


@dataclass(frozen=True)
class Clustering:
    assignments: np.ndarray
    k: int
    cost: float
    iterations: int = 0
    restarts_used: int = 0
    seed: int | None = None
    history: tuple = field(default=(), repr=False, compare=False)

    def to_dict(self) -> dict:
        return {
            "assignments": [int(a) for a in self.assignments],
            "k": self.k,
            "cost": self.cost,
            "iterations": self.iterations,
            "restarts_used": self.restarts_used,
            "seed": self.seed,
        }


def canonical_labels(labels) -> np.ndarray:
    """Relabel by first occurrence, 1-based."""
    labels = np.asarray(labels)
    mapping: dict = {}
    out = np.empty(labels.shape[0], dtype=int)
    for i, a in enumerate(labels.tolist()):
        if a not in mapping:
            mapping[a] = len(mapping) + 1
        out[i] = mapping[a]
    return out


def _members(c, m: int) -> np.ndarray:
    idx = np.unique(np.asarray(list(c), dtype=int))
    if idx.size == 0:
        raise EmptyCluster("cluster has no members")
    if idx[0] < 0 or idx[-1] >= m:
        raise IndexError(f"cluster index out of range for {m} points")
    return idx


def point_to_centroid_sq(kern, i: int, c) -> float:
    """Squared feature-space distance from point ``i`` to the mean of ``c``."""
    kern = as_kernel(kern)
    idx = _members(c, kern.shape[0])
    n = idx.size
    return float(kern[i, i] - 2.0 * kern[idx, i].sum() / n
                 + kern[np.ix_(idx, idx)].sum() / (n * n))


def point_to_weighted_centroid_sq(kern, i: int, c, w) -> float:
    """Squared distance from point ``i`` to the ``w``-weighted centre of ``c``.

    Weights are per point and are normalised by their sum over ``c``.
    """
    kern = as_kernel(kern)
    idx = _members(c, kern.shape[0])
    w = np.asarray(w, dtype=float)
    if np.any(w < 0):
        raise ValueError("weights must be non-negative")
    wc = w[idx]
    total = wc.sum()
    if not total > 0:
        raise ZeroWeightCluster(f"weights of cluster {idx.tolist()} sum to zero")
    return float(kern[i, i] - 2.0 * (wc @ kern[idx, i]) / total
                 + wc @ kern[np.ix_(idx, idx)] @ wc / (total * total))


def _check_labels(assignments, k: int, m: int) -> np.ndarray:
    a = np.asarray(assignments)
    if a.shape != (m,):
        raise LabelOutOfRange(f"expected {m} labels, got shape {a.shape}")
    if not np.all(np.equal(np.mod(a, 1), 0)):
        raise LabelOutOfRange("labels must be integers")
    a = a.astype(int)
    if k < 1 or a.min() < 1 or a.max() > k:
        raise LabelOutOfRange(f"labels must lie in 1..{k}")
    return a


def cost_of(kern, assignments, k: int) -> float:
    """k-means cost: sum of squared distances of points to their cluster means.

    Labels are 1-based. Empty clusters contribute nothing.
    """
    kern = as_kernel(kern)
    a = _check_labels(assignments, k, kern.shape[0])
    return _cost(kern, a - 1, k)


def _cost(kern: np.ndarray, labels0: np.ndarray, k: int) -> float:
    total = float(np.trace(kern))
    for j in range(k):
        idx = np.flatnonzero(labels0 == j)
        if idx.size:
            total -= kern[np.ix_(idx, idx)].sum() / idx.size
    return total


def weighted_cost_of(kern, assignments, k: int, w) -> float:
    """Unweighted sum of squared distances of points to their cluster's
    weighted centre."""
    kern = as_kernel(kern)
    a = _check_labels(assignments, k, kern.shape[0])
    total = 0.0
    for j in range(1, k + 1):
        idx = np.flatnonzero(a == j)
        for i in idx:
            total += point_to_weighted_centroid_sq(kern, i, idx, w)
    return total


# -- Lloyd iterations ----------------------------------------------------------

def _distances(kern: np.ndarray, diag: np.ndarray, labels0: np.ndarray, k: int):
    """m x k squared distances to cluster means; inf for empty clusters."""
    m = kern.shape[0]
    z = np.zeros((m, k))
    z[np.arange(m), labels0] = 1.0
    sizes = z.sum(axis=0)
    kz = kern @ z
    with np.errstate(divide="ignore", invalid="ignore"):
        within = np.einsum("ij,ij->j", z, kz) / sizes**2
        dist = diag[:, None] - 2.0 * kz / sizes + within
    dist[:, sizes == 0] = np.inf
    return dist


def _fill_empty(kern, diag, labels0, k):
    # Move the point farthest from its own centroid into each empty cluster.
    while True:
        sizes = np.bincount(labels0, minlength=k)
        empty = np.flatnonzero(sizes == 0)
        if empty.size == 0:
            return labels0
        dist = _distances(kern, diag, labels0, k)
        own = dist[np.arange(labels0.size), labels0]
        own[sizes[labels0] < 2] = -np.inf
        i = int(np.argmax(own))
        labels0 = labels0.copy()
        labels0[i] = empty[0]


def _seed_centres(kern, diag, k, rng, init):
    m = kern.shape[0]
    if init == "random":
        return rng.choice(m, size=k, replace=False)
    if init != "kmeans++":
        raise ValueError(f"unknown init {init!r}")
    centres = [int(rng.integers(m))]
    # distance^2 to a singleton {c}: k_ii - 2 k_ic + k_cc
    best = np.clip(diag - 2.0 * kern[:, centres[0]] + diag[centres[0]], 0.0, None)
    for _ in range(1, k):
        p = best.copy()
        p[centres] = 0.0
        if p.sum() > 0:
            nxt = int(rng.choice(m, p=p / p.sum()))
        else:
            rest = np.setdiff1d(np.arange(m), centres)
            nxt = int(rng.choice(rest))
        centres.append(nxt)
        d_new = np.clip(diag - 2.0 * kern[:, nxt] + diag[nxt], 0.0, None)
        best = np.minimum(best, d_new)
    return np.array(centres)


def lloyd_run(kern, labels0, k: int, max_iter: int = 100):
    """Run Lloyd iterations from a 0-based starting assignment.

    Returns ``(labels0, costs, iterations)`` where ``costs[t]`` is the
    partition cost after ``t`` reassignment steps (``costs[0]`` is the
    starting cost).
    """
    kern = np.asarray(kern, dtype=float)
    diag = np.diag(kern).copy()
    labels0 = _fill_empty(kern, diag, np.asarray(labels0, dtype=int), k)
    costs = [_cost(kern, labels0, k)]
    it = 0
    while it < max_iter:
        new = np.argmin(_distances(kern, diag, labels0, k), axis=1)
        new = _fill_empty(kern, diag, new, k)
        it += 1
        if np.array_equal(new, labels0):
            break
        labels0 = new
        costs.append(_cost(kern, labels0, k))
    return labels0, costs, it


def _one_restart(kern, diag, k, seed, r, max_iter, init):
    rng = np.random.default_rng([seed, r])
    centres = _seed_centres(kern, diag, k, rng, init)
    start = np.argmin(diag[:, None] - 2.0 * kern[:, centres] + diag[centres][None, :], axis=1)
    labels0, costs, it = lloyd_run(kern, start, k, max_iter)
    return canonical_labels(labels0), costs[-1], it, tuple(costs)


def _better(cand, best) -> bool:
    """Lower cost wins; costs equal within TIE_RTOL fall back to the
    lexicographically smaller canonical labelling."""
    if best is None:
        return True
    c1, c0 = cand[1], best[1]
    if abs(c1 - c0) <= TIE_RTOL * max(1.0, abs(c0)):
        return tuple(cand[0]) < tuple(best[0])
    return c1 < c0


def _workers_from_env() -> int:
    raw = os.environ.get("GOWERK_THREADS", "").strip()
    if not raw:
        return 1
    n = int(raw)
    if n == 0:
        return os.cpu_count() or 1
    return max(1, n)


def lloyd(kern, k: int, seed: int = 0, restarts: int = 10, max_iter: int = 100,
          init: str = "kmeans++", workers: int | None = None) -> Clustering:
    """Kernel k-means, best of ``restarts`` independent runs.

    Each restart ``r`` draws from its own generator seeded with
    ``(seed, r)``, so the result does not depend on ``workers``. The kernel
    does not have to be PSD, but then the iterations carry no optimality
    guarantee.

    Parameters
    ----------
    kern : array_like
        Symmetric m x m kernel matrix.
    k : int
        Number of clusters, ``1 <= k <= m``.
    init : {"kmeans++", "random"}
        Seeding: k-means++ in feature space, or k distinct random points.
    workers : int, optional
        Thread count for restarts; defaults to ``GOWERK_THREADS`` (unset
        means 1, 0 means one per CPU).
    """
    kern = as_kernel(kern)
    m = kern.shape[0]
    if k < 1 or k > m:
        raise KTooLarge(f"k must lie in 1..{m}, got {k}")
    if restarts < 1 or max_iter < 1:
        raise ValueError("restarts and max_iter must be positive")
    if workers is None:
        workers = _workers_from_env()
    diag = np.diag(kern).copy()

    def job(r):
        return _one_restart(kern, diag, k, seed, r, max_iter, init)

    if workers > 1 and restarts > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(job, range(restarts)))
    else:
        results = [job(r) for r in range(restarts)]

    best = None
    for res in results:
        if _better(res, best):
            best = res
    labels, cost, it, hist = best
    return Clustering(assignments=labels, k=k, cost=float(cost), iterations=it,
                      restarts_used=restarts, seed=seed, history=hist)


def kmeans_points(y, k: int, seed: int = 0, restarts: int = 10, max_iter: int = 100) -> Clustering:
    """Ordinary k-means on explicit coordinates (rows of ``y``).

    Means are formed explicitly, so this shares no arithmetic with the
    kernel-trick path and can serve as a cross-check for it.
    """
    y = np.asarray(y, dtype=float)
    m = y.shape[0]
    if k < 1 or k > m:
        raise KTooLarge(f"k must lie in 1..{m}, got {k}")
    best = None
    for r in range(restarts):
        rng = np.random.default_rng([seed, r])
        centres = y[rng.choice(m, size=k, replace=False)]
        labels = None
        it = 0
        for it in range(1, max_iter + 1):
            d2 = ((y[:, None, :] - centres[None, :, :]) ** 2).sum(axis=-1)
            new = np.argmin(d2, axis=1)
            if labels is not None and np.array_equal(new, labels):
                break
            labels = new
            for j in range(k):
                if np.any(labels == j):
                    centres[j] = y[labels == j].mean(axis=0)
        cost = sum(((y[labels == j] - y[labels == j].mean(axis=0)) ** 2).sum()
                   for j in range(k) if np.any(labels == j))
        cand = (canonical_labels(labels), float(cost), it)
        if _better(cand, best):
            best = cand
    return Clustering(assignments=best[0], k=k, cost=best[1], iterations=best[2],
                      restarts_used=restarts, seed=seed)


# -- exhaustive oracle -----------------------------------------------------------

def restricted_growth_strings(m: int, k: int):
    """All labellings of ``m`` points into at most ``k`` non-empty clusters,
    each exactly once, as 0-based canonical label tuples in lexicographic
    order."""
    a = [0] * m

    def rec(i, used):
        if i == m:
            yield tuple(a)
            return
        for lab in range(min(used + 1, k)):
            a[i] = lab
            yield from rec(i + 1, max(used, lab + 1))

    if m == 0:
        return
    yield from rec(1, 1)


def _all_costs(kern: np.ndarray, k: int, chunk: int = 20000):
    m = kern.shape[0]
    trace = float(np.trace(kern))
    gen = restricted_growth_strings(m, k)
    while True:
        block = np.array(list(islice(gen, chunk)), dtype=np.int8)
        if block.size == 0:
            return
        total = np.full(block.shape[0], trace)
        for j in range(k):
            z = (block == j).astype(float)
            n = z.sum(axis=1)
            q = np.einsum("pi,ij,pj->p", z, kern, z)
            np.subtract(total, np.divide(q, n, out=np.zeros_like(q), where=n > 0), out=total)
        yield block, total


def _guard(kern, k):
    m = kern.shape[0]
    if m > EXHAUSTIVE_MAX_POINTS:
        raise TooManyPoints(f"exhaustive search is limited to {EXHAUSTIVE_MAX_POINTS} points")
    if k < 1 or k > m:
        raise KTooLarge(f"k must lie in 1..{m}, got {k}")


def exhaustive_best(kern, k: int) -> Clustering:
    """Global minimum of :func:`cost_of` over all partitions into at most
    ``k`` non-empty clusters. Ties go to the lexicographically smallest
    canonical labelling."""
    kern = as_kernel(kern)
    _guard(kern, k)
    best_lab, best_cost = None, np.inf
    for block, costs in _all_costs(kern, k):
        j = int(np.argmin(costs))
        c = float(costs[j])
        # blocks arrive in lexicographic order, so earlier wins ties
        if best_lab is None or c < best_cost - TIE_RTOL * max(1.0, abs(best_cost)):
            best_lab, best_cost = block[j].astype(int) + 1, c
    return Clustering(assignments=best_lab, k=k, cost=best_cost)


def optimal_partitions(kern, k: int, rtol: float = TIE_RTOL):
    """Every canonical labelling whose cost is within ``rtol`` of the optimum.

    Returns ``(cost, labellings)`` with 1-based label tuples.
    """
    kern = as_kernel(kern)
    _guard(kern, k)
    blocks, costs = zip(*[(b, c) for b, c in _all_costs(kern, k)])
    blocks = np.concatenate(blocks)
    costs = np.concatenate(costs)
    best = float(costs.min())
    hit = costs <= best + rtol * max(1.0, abs(best))
    return best, [tuple(int(x) + 1 for x in row) for row in blocks[hit]]


# -- shift law -------------------------------------------------------------------

def shifted_kernel(kern, sigma: float) -> np.ndarray:
    """Centred kernel after adding ``2 * sigma`` to off-diagonal squared
    distances implied by ``kern``."""
    dsq = squared_distances_from_kernel(kern)
    dsq = dsq + 2.0 * sigma
    np.fill_diagonal(dsq, 0.0)
    return _gower_from_sq(dsq, uniform_svector(dsq.shape[0]))


def shift_cost_check(kern, assignments, k: int, sigma: float, rtol: float = 1e-6):
    """Compare a partition's cost before and after a ``2 * sigma`` shift.

    Returns ``(original, shifted, predicted_delta)`` with
    ``predicted_delta = sigma * (m - k)``. Raises ShiftLawViolation if the
    observed difference misses the prediction by more than ``rtol``
    (relative to ``max(1, |shifted|)``).
    """
    if sigma < 0:
        raise ValueError("sigma must be non-negative")
    kern = as_kernel(kern)
    m = kern.shape[0]
    a = _check_labels(assignments, k, m)
    present = np.unique(a)
    if present.size != k:
        missing = sorted(set(range(1, k + 1)) - set(present.tolist()))
        raise EmptyCluster(f"clusters {missing} are empty")
    original = cost_of(kern, a, k)
    shifted = cost_of(shifted_kernel(kern, sigma), a, k)
    predicted = sigma * (m - k)
    if abs((shifted - original) - predicted) > rtol * max(1.0, abs(shifted)):
        raise ShiftLawViolation(
            f"cost moved by {shifted - original!r}, expected {predicted!r}")
    return original, shifted, predicted
