"""Reproduction harness for the worked examples and randomized property suites.

:func:`run_checks` evaluates every check and returns one
:class:`CheckResult` per check. Checks are grouped into the sections
``"section5"`` (7-point Euclidean example), ``"section6"`` (6-point
non-Euclidean example) and ``"properties"`` (randomized invariants).
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import reference_data as ref
from .euclidesation import euclidise, gower_sigma, shift_squared
from .kkmeans import (
    canonical_labels,
    cost_of,
    kmeans_points,
    lloyd,
    optimal_partitions,
    shift_cost_check,
    weighted_cost_of,
)
from .symmat import min_eigenvalue, sym_eigen
from .transforms import (
    EPS_PSD,
    centered_transform,
    embed,
    gower_transform,
    pairwise_distances,
    recover_distances,
)

SECTIONS = ("section5", "section6", "properties")


@dataclass(frozen=True)
class Tolerances:
    printed: float = 0.05       # one-decimal reference matrices
    eigen: float = 1e-3         # three-decimal reference eigenvalues / sigma
    cost: float = 0.01          # reference cost values
    roundtrip: float = 1e-12    # sum of squared distance differences
    zero_eigen: float = 1e-6    # "smallest eigenvalue is 0"
    eps_psd: float = EPS_PSD


@dataclass
class CheckResult:
    name: str
    section: str
    criterion: int
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name} (criterion {self.criterion}): {self.detail}"


@dataclass
class Check:
    name: str
    section: str
    criterion: int
    fn: Callable[[Tolerances], tuple[bool, str]] = field(repr=False)


# -- seven-point Euclidean example ---------------------------------------------

def _roundtrip(s, tol: Tolerances):
    t0 = time.perf_counter()
    d0 = ref.d0()
    f = gower_transform(d0, s)
    emb = embed(f, tol.eps_psd)
    sse = float(np.sum((pairwise_distances(emb.points) - d0) ** 2))
    elapsed = time.perf_counter() - t0
    ok = sse <= tol.roundtrip and elapsed < 1.0 and emb.rank == 4
    return ok, f"sse={sse:.3e} rank={emb.rank} time={elapsed:.3f}s"


def _kernel_match(s, printed, tol: Tolerances):
    f = gower_transform(ref.d0(), s)
    dev = float(np.max(np.abs(f - printed)))
    return dev <= tol.printed, f"max |F - reference| = {dev:.4f} (tol {tol.printed})"


def check_s5_roundtrip(tol):
    return _roundtrip(ref.S, tol)


def check_s5_roundtrip_prime(tol):
    ok1, d1 = _roundtrip(ref.S_PRIME, tol)
    ok2, d2 = _kernel_match(ref.S, ref.F_PRINTED, tol)
    ok3, d3 = _kernel_match(ref.S_PRIME, ref.F_PRIME_PRINTED, tol)
    return ok1 and ok2 and ok3, f"{d1}; F: {d2}; F': {d3}"


def check_s5_clustering(tol):
    d0 = ref.d0()
    expected = tuple(int(a) for a in canonical_labels(ref.CLUSTERING_5))
    found = {}
    for tag, s in (("F", ref.S), ("F'", ref.S_PRIME)):
        f = gower_transform(d0, s)
        found[f"kernel {tag}"] = lloyd(f, 2, seed=1, restarts=100).assignments
        found[f"points Y from {tag}"] = kmeans_points(embed(f).points, 2, seed=1,
                                                      restarts=100).assignments
    found["points X"] = kmeans_points(ref.X, 2, seed=1, restarts=100).assignments
    bad = [k for k, v in found.items() if tuple(v) != expected]
    return not bad, f"expected {list(expected)}; mismatches: {bad or 'none'}"


# -- six-point non-Euclidean example -------------------------------------------

def check_s6_non_euclidean(tol):
    f = centered_transform(ref.NE_D)
    dev = float(np.max(np.abs(f - ref.NE_F_PRINTED)))
    lam = min_eigenvalue(f)
    sigma = gower_sigma(ref.NE_D, tol.eps_psd)
    ok = (dev <= tol.printed and abs(lam + ref.NE_SIGMA) <= tol.eigen
          and abs(sigma - ref.NE_SIGMA) <= tol.eigen)
    return ok, f"max dev {dev:.4f}, lambda_min={lam:.6f}, sigma={sigma:.6f}"


def check_s6_original_gower(tol):
    rep = euclidise(ref.NE_D, mode="original_gower", eps_psd=tol.eps_psd)
    f = centered_transform(rep.repaired)
    dev = float(np.max(np.abs(f - ref.IMP_F_PRINTED)))
    ok = dev <= tol.printed and abs(rep.post_lambda_min - ref.IMP_LAMBDA_MIN) <= tol.eigen
    return ok, f"max dev {dev:.4f}, lambda_min={rep.post_lambda_min:.6f}"


def check_s6_corrected(tol):
    rep = euclidise(ref.NE_D, mode="corrected", eps_psd=tol.eps_psd)
    f = centered_transform(rep.repaired)
    dev = float(np.max(np.abs(f - ref.E_F_PRINTED)))
    ok = dev <= tol.printed and abs(rep.post_lambda_min) <= tol.zero_eigen
    return ok, f"max dev {dev:.4f}, lambda_min={rep.post_lambda_min:.3e}"


def _six_point_kernels(tol):
    ne_f = centered_transform(ref.NE_D)
    e_f = centered_transform(euclidise(ref.NE_D, eps_psd=tol.eps_psd).repaired)
    return ne_f, e_f


def check_s6_costs(tol):
    ne_f, e_f = _six_point_kernels(tol)
    got = {
        "nE best": (cost_of(ne_f, ref.NE_BEST, 2), ref.COST_NE_BEST),
        "nE split": (cost_of(ne_f, ref.SPLIT, 2), ref.COST_NE_SPLIT),
        "nE weighted": (weighted_cost_of(ne_f, ref.SPLIT, 2, ref.NE_WEIGHTS),
                        ref.COST_NE_WEIGHTED),
        "E best": (cost_of(e_f, ref.E_BEST, 2), ref.COST_E_BEST),
        "E split": (cost_of(e_f, ref.SPLIT, 2), ref.COST_E_SPLIT),
        "E weighted": (weighted_cost_of(e_f, ref.SPLIT, 2, ref.NE_WEIGHTS),
                       ref.COST_E_WEIGHTED),
    }
    bad = [k for k, (v, want) in got.items() if abs(v - want) > tol.cost]
    opt_ne, parts_ne = optimal_partitions(ne_f, 2)
    opt_e, parts_e = optimal_partitions(e_f, 2)
    global_ok = (abs(opt_ne - ref.COST_NE_BEST) <= tol.cost
                 and abs(opt_e - ref.COST_E_BEST) <= tol.cost
                 and tuple(canonical_labels(ref.NE_BEST)) in parts_ne
                 and tuple(canonical_labels(ref.E_BEST)) in parts_e)
    detail = ", ".join(f"{k}={v:.3f}" for k, (v, _) in got.items())
    detail += f"; exhaustive optima {opt_ne:.3f} / {opt_e:.3f}"
    return not bad and global_ok, detail + (f"; off: {bad}" if bad else "")


def check_s6_lloyd(tol):
    ne_f, _ = _six_point_kernels(tol)
    res = lloyd(ne_f, 2, seed=1, restarts=100)
    expected = tuple(canonical_labels(ref.NE_BEST))
    ok = tuple(res.assignments) == expected and abs(res.cost - ref.COST_NE_BEST) <= tol.cost
    return ok, f"assignments={res.assignments.tolist()} cost={res.cost:.4f}"


def check_s6_shift_law(tol):
    ne_f, _ = _six_point_kernels(tol)
    sigma = gower_sigma(ref.NE_D, tol.eps_psd)
    orig, shifted, delta = shift_cost_check(ne_f, ref.NE_BEST, 2, sigma)
    lhs = ref.COST_E_BEST - ref.COST_NE_BEST
    rhs = ref.NE_SIGMA * (6 - 2)
    ok = abs(lhs - rhs) <= tol.cost and abs(shifted - ref.COST_E_BEST) <= tol.cost
    return ok, f"{lhs:.3f} vs {rhs:.3f}; computed {orig:.3f} -> {shifted:.3f} (delta {delta:.3f})"


# -- randomized property suites ------------------------------------------------

def _random_points(rng, m=None, dim=None):
    m = m or int(rng.integers(2, 13))
    dim = dim or int(rng.integers(1, 6))
    return rng.uniform(-100, 100, size=(m, dim))


def _random_svector(rng, m):
    if rng.random() < 0.5:
        s = rng.random(m)
        return s / s.sum()
    u = rng.normal(size=m)
    return u + (1.0 - u.sum()) / m


def _random_dissimilarity(rng, m):
    a = rng.uniform(0, 100, size=(m, m))
    a = np.triu(a, 1)
    return a + a.T


def prop_necessity(rng, n=200):
    fails = 0
    for _ in range(n):
        d = pairwise_distances(_random_points(rng))
        for _ in range(5):
            w = sym_eigen(gower_transform(d, _random_svector(rng, d.shape[0]))).eigenvalues
            fails += w[-1] < -1e-8 * max(1.0, abs(w[0]))
    return fails


def prop_roundtrip(rng, n=200):
    fails = 0
    for _ in range(n):
        d = pairwise_distances(_random_points(rng))
        rec = recover_distances(gower_transform(d, _random_svector(rng, d.shape[0])))
        fails += np.max(np.abs(rec - d)) > 1e-9 * max(1.0, d.max())
    return fails


def prop_sufficiency(rng, n=200):
    fails = 0
    for i in range(n):
        m = int(rng.integers(2, 13))
        if i % 2:
            d = euclidise(_random_dissimilarity(rng, m)).repaired
        else:
            d = pairwise_distances(_random_points(rng, m))
        y = embed(centered_transform(d)).points
        fails += np.max(np.abs(pairwise_distances(y) - d)) > 1e-7
    return fails


def prop_shift_equivalence(rng, n=200):
    fails = 0
    for _ in range(n):
        d = pairwise_distances(_random_points(rng))
        m = d.shape[0]
        a = recover_distances(gower_transform(d, _random_svector(rng, m)))
        b = recover_distances(gower_transform(d, _random_svector(rng, m)))
        fails += np.max(np.abs(a - b)) > 1e-9 * max(1.0, d.max())
    return fails


def prop_eigen_shift(rng, n=100):
    """Spectrum of the 2*sigma-shifted centred kernel equals the original
    spectrum on the zero-sum subspace moved up by sigma, plus one zero."""
    fails = 0
    for _ in range(n):
        m = int(rng.integers(2, 11))
        d = _random_dissimilarity(rng, m)
        sigma = float(rng.uniform(0, 1000))
        f = centered_transform(d)
        # orthonormal basis of the complement of the constant vector
        q = np.linalg.qr(np.column_stack([np.ones(m), rng.normal(size=(m, m - 1))]))[0][:, 1:]
        inner = sym_eigen(q.T @ f @ q).eigenvalues if m > 1 else np.array([])
        expected = np.sort(np.append(inner + sigma, 0.0))[::-1]
        got = sym_eigen(centered_transform(shift_squared(d, 2 * sigma))).eigenvalues
        fails += np.max(np.abs(got - expected)) > 1e-7 * max(1.0, abs(expected).max())
    return fails


def _random_full_partition(rng, m, k):
    labels = np.concatenate([np.arange(1, k + 1), rng.integers(1, k + 1, size=m - k)])
    return rng.permutation(labels)


def prop_cost_shift(rng, n=100):
    fails = 0
    for i in range(n):
        m = int(rng.integers(3, 11))
        k = int(rng.integers(2, min(4, m) + 1))
        if i % 2:
            d = pairwise_distances(_random_points(rng, m))
        else:
            d = _random_dissimilarity(rng, m)
        sigma = float(rng.uniform(1e-3, 100))
        labels = _random_full_partition(rng, m, k)
        orig, shifted, delta = shift_cost_check(centered_transform(d), labels, k, sigma)
        fails += abs((shifted - orig) - sigma * (m - k)) > 1e-6 * max(1.0, abs(shifted))
    return fails


def prop_argmin_preservation(rng, n=50):
    fails = 0
    for _ in range(n):
        m = int(rng.integers(3, 9))
        d = _random_dissimilarity(rng, m)
        sigma = max(gower_sigma(d), float(rng.uniform(0, 100)))
        _, before = optimal_partitions(centered_transform(d), 2)
        _, after = optimal_partitions(centered_transform(shift_squared(d, 2 * sigma)), 2)
        fails += set(before) != set(after)
    return fails


def _property_check(fn, n, seed):
    def run(tol):
        fails = int(fn(np.random.default_rng(seed), n))
        return fails == 0, f"{fails} failures in {n} instances"
    return run


CHECKS = [
    Check("section5.roundtrip_s", "section5", 1, check_s5_roundtrip),
    Check("section5.roundtrip_s_prime_and_kernels", "section5", 2, check_s5_roundtrip_prime),
    Check("section5.clustering_agreement", "section5", 3, check_s5_clustering),
    Check("section6.non_euclidean_kernel", "section6", 4, check_s6_non_euclidean),
    Check("section6.original_gower_refuted", "section6", 5, check_s6_original_gower),
    Check("section6.corrected_euclidesation", "section6", 6, check_s6_corrected),
    Check("section6.cost_table", "section6", 7, check_s6_costs),
    Check("section6.lloyd_non_euclidean", "section6", 7, check_s6_lloyd),
    Check("section6.shift_law", "section6", 8, check_s6_shift_law),
    Check("properties.cost_shift_law", "properties", 8, _property_check(prop_cost_shift, 100, 8)),
    Check("properties.necessity", "properties", 9, _property_check(prop_necessity, 200, 91)),
    Check("properties.sufficiency", "properties", 9, _property_check(prop_sufficiency, 200, 92)),
    Check("properties.roundtrip", "properties", 9, _property_check(prop_roundtrip, 200, 93)),
    Check("properties.shift_equivalence", "properties", 9,
          _property_check(prop_shift_equivalence, 200, 94)),
    Check("properties.eigenvalue_shift", "properties", 9, _property_check(prop_eigen_shift, 100, 95)),
    Check("properties.argmin_preservation", "properties", 9,
          _property_check(prop_argmin_preservation, 50, 96)),
]


def run_checks(only=None, tol: Tolerances | None = None) -> list[CheckResult]:
    """Run all checks, or only those whose section is in ``only``."""
    tol = tol or Tolerances()
    if isinstance(only, str):
        only = (only,)
    results = []
    for chk in CHECKS:
        if only and chk.section not in only:
            continue
        t0 = time.perf_counter()
        try:
            ok, detail = chk.fn(tol)
        except Exception as exc:  # a crashing check is a failing check
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(CheckResult(chk.name, chk.section, chk.criterion, bool(ok), detail,
                                   time.perf_counter() - t0))
    return results
