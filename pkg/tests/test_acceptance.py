"""Acceptance criteria 1-10, each at its stated tolerance.

Every test records one ``[PASS]``/``[FAIL]`` line; the lines are printed as
they happen and again in the terminal summary.
"""
import json
import time

import numpy as np
import pytest

from gowerk import reference_data as ref
from gowerk.cli import main
from gowerk.euclidesation import euclidise, gower_sigma, shift_squared
from gowerk.kkmeans import (
    canonical_labels,
    cost_of,
    exhaustive_best,
    kmeans_points,
    lloyd,
    optimal_partitions,
    shift_cost_check,
    shifted_kernel,
    weighted_cost_of,
)
from gowerk.symmat import min_eigenvalue, sym_eigen
from gowerk.transforms import (
    centered_transform,
    embed,
    gower_transform,
    pairwise_distances,
    recover_distances,
)

from conftest import random_dissimilarity, random_points, random_svector

SUITE_T0 = time.perf_counter()


def record(report, number, title, checks):
    """``checks`` is a list of (ok, detail); emit one line and assert."""
    ok = all(c for c, _ in checks)
    detail = "; ".join(d for _, d in checks)
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2} {title}: {detail}"
    report.append(line)
    print(line)
    failed = [d for c, d in checks if not c]
    assert ok, failed


def roundtrip(s):
    t0 = time.perf_counter()
    d0 = ref.d0()
    f = gower_transform(d0, s)
    y = embed(f).points
    sse = float(np.sum((pairwise_distances(y) - d0) ** 2))
    return sse, time.perf_counter() - t0, y.shape[1], f


def test_criterion_01_roundtrip(acceptance_report):
    sse, secs, rank, _ = roundtrip(ref.S)
    record(acceptance_report, 1, "round trip with s", [
        (sse <= 1e-12, f"sse={sse:.2e}"),
        (secs < 1.0, f"time={secs:.3f}s"),
        (rank == 4, f"rank={rank}"),
    ])


def test_criterion_02_second_svector(acceptance_report):
    sse, _, _, f2 = roundtrip(ref.S_PRIME)
    f1 = gower_transform(ref.d0(), ref.S)
    dev1 = float(np.abs(f1 - ref.F_PRINTED).max())
    dev2 = float(np.abs(f2 - ref.F_PRIME_PRINTED).max())
    record(acceptance_report, 2, "round trip with s' and kernel values", [
        (sse <= 1e-12, f"sse={sse:.2e}"),
        (dev1 <= 0.05, f"F dev={dev1:.4f}"),
        (dev2 <= 0.05, f"F' dev={dev2:.4f}"),
    ])


def test_criterion_03_clustering_agreement(acceptance_report):
    want = tuple(canonical_labels(ref.CLUSTERING_5).tolist())
    checks = []
    for tag, s in (("F", ref.S), ("F'", ref.S_PRIME)):
        f = gower_transform(ref.d0(), s)
        a = tuple(lloyd(f, 2, seed=1, restarts=100).assignments.tolist())
        b = tuple(kmeans_points(embed(f).points, 2, seed=1, restarts=100).assignments.tolist())
        checks.append((a == want, f"kernel {tag} {list(a)}"))
        checks.append((b == want, f"points from {tag} {list(b)}"))
    c = tuple(kmeans_points(ref.X, 2, seed=1, restarts=100).assignments.tolist())
    checks.append((c == want, f"X {list(c)}"))
    record(acceptance_report, 3, "clustering agreement", checks)


def test_criterion_04_non_euclidean(acceptance_report):
    f = centered_transform(ref.NE_D)
    dev = float(np.abs(f - ref.NE_F_PRINTED).max())
    lam = min_eigenvalue(f)
    sigma = gower_sigma(ref.NE_D)
    record(acceptance_report, 4, "non-Euclidean six-point kernel", [
        (dev <= 0.05, f"dev={dev:.4f}"),
        (abs(lam + 757.205) <= 1e-3, f"lambda_min={lam:.4f}"),
        (abs(sigma - 757.205) <= 1e-3, f"sigma={sigma:.4f}"),
    ])


def test_criterion_05_single_sigma_shift(acceptance_report):
    sigma = gower_sigma(ref.NE_D)
    f = centered_transform(shift_squared(ref.NE_D, sigma))
    dev = float(np.abs(f - ref.IMP_F_PRINTED).max())
    lam = min_eigenvalue(f)
    record(acceptance_report, 5, "sigma shift stays non-Euclidean", [
        (dev <= 0.05, f"dev={dev:.4f}"),
        (abs(lam + 378.603) <= 1e-3, f"lambda_min={lam:.4f}"),
    ])


def test_criterion_06_double_sigma_shift(acceptance_report):
    sigma = gower_sigma(ref.NE_D)
    f = centered_transform(shift_squared(ref.NE_D, 2 * sigma))
    dev = float(np.abs(f - ref.E_F_PRINTED).max())
    lam = min_eigenvalue(f)
    rep = euclidise(ref.NE_D)
    record(acceptance_report, 6, "2 sigma shift is Euclidean", [
        (dev <= 0.05, f"dev={dev:.4f}"),
        (abs(lam) <= 1e-6, f"lambda_min={lam:.2e}"),
        (abs(rep.post_lambda_min) <= 1e-6, f"euclidise post={rep.post_lambda_min:.2e}"),
    ])


def test_criterion_07_cost_table(acceptance_report):
    nf = centered_transform(ref.NE_D)
    ef = centered_transform(euclidise(ref.NE_D).repaired)
    values = [
        ("nE best", cost_of(nf, ref.NE_BEST, 2), 1325.0),
        ("nE split", cost_of(nf, ref.SPLIT, 2), 1400.0),
        ("nE weighted", weighted_cost_of(nf, ref.SPLIT, 2, ref.NE_WEIGHTS), 1175.0),
        ("E best", cost_of(ef, ref.E_BEST, 2), 4353.821),
        ("E split", cost_of(ef, ref.SPLIT, 2), 4428.821),
        ("E weighted", weighted_cost_of(ef, ref.SPLIT, 2, ref.NE_WEIGHTS), 5907.533),
    ]
    checks = [(abs(got - want) <= 0.01, f"{name}={got:.3f}") for name, got, want in values]
    n_opt = exhaustive_best(nf, 2)
    e_cost, e_optima = optimal_partitions(ef, 2)
    checks.append((abs(n_opt.cost - 1325.0) <= 0.01, f"nE global min={n_opt.cost:.3f}"))
    checks.append((abs(e_cost - 4353.821) <= 0.01 and tuple(ref.E_BEST) in e_optima,
                   f"E global min={e_cost:.3f}"))
    record(acceptance_report, 7, "cost table", checks)


def test_criterion_08_shift_law(acceptance_report):
    sigma = gower_sigma(ref.NE_D)
    nf = centered_transform(ref.NE_D)
    original, shifted, delta = shift_cost_check(nf, ref.NE_BEST, 2, sigma)
    checks = [
        (abs((4353.821 - 1325.0) - 757.205 * 4) <= 0.01, "reference values consistent"),
        (abs((shifted - original) - delta) <= 0.01, f"computed delta={shifted - original:.3f}"),
    ]
    rng = np.random.default_rng(8)
    bad = 0
    for _ in range(100):
        m = int(rng.integers(3, 10))
        k = int(rng.integers(1, m + 1))
        f = centered_transform(random_dissimilarity(rng, m))
        labels = np.concatenate([np.arange(1, k + 1), rng.integers(1, k + 1, size=m - k)])
        rng.shuffle(labels)
        s = float(rng.uniform(0, 500))
        a = cost_of(f, labels, k)
        b = cost_of(shifted_kernel(f, s), labels, k)
        bad += abs((b - a) - s * (m - k)) > 1e-6 * max(1.0, abs(b))
    checks.append((bad == 0, f"{bad}/100 random instances off"))
    record(acceptance_report, 8, "shift law", checks)


def _necessity(rng):
    m, dim = int(rng.integers(2, 13)), int(rng.integers(1, 6))
    d = pairwise_distances(random_points(rng, m, dim))
    for _ in range(5):
        w = sym_eigen(gower_transform(d, random_svector(rng, m))).eigenvalues
        if w[-1] < -1e-8 * max(1.0, abs(w[0])):
            return False
    return True


def _sufficiency(rng):
    d = random_dissimilarity(rng, int(rng.integers(2, 9)))
    d = euclidise(d).repaired
    y = embed(centered_transform(d)).points
    return np.abs(pairwise_distances(y) - d).max() <= 1e-7 * max(1.0, d.max())


def _roundtrip(rng):
    m = int(rng.integers(2, 13))
    d = pairwise_distances(random_points(rng, m, int(rng.integers(1, 6))))
    r = recover_distances(gower_transform(d, random_svector(rng, m)))
    return np.abs(r - d).max() <= 1e-9 * max(1.0, d.max())


def _shift_equivalence(rng):
    m = int(rng.integers(2, 13))
    d = pairwise_distances(random_points(rng, m, int(rng.integers(1, 6))))
    a = recover_distances(gower_transform(d, random_svector(rng, m)))
    b = recover_distances(gower_transform(d, random_svector(rng, m)))
    return np.abs(a - b).max() <= 1e-9 * max(1.0, d.max())


def _eigen_shift(rng):
    m = int(rng.integers(2, 10))
    d = random_dissimilarity(rng, m)
    sigma = float(rng.uniform(0, 500))
    f = centered_transform(d)
    g = centered_transform(shift_squared(d, 2 * sigma))
    q, _ = np.linalg.qr(np.column_stack([np.ones(m), rng.normal(size=(m, m - 1))]))
    b = q[:, 1:]
    before = np.linalg.eigvalsh(b.T @ f @ b)
    after = np.linalg.eigvalsh(b.T @ g @ b)
    return np.abs(after - before - sigma).max() <= 1e-7 * max(1.0, np.abs(f).max())


def _argmin(rng):
    d = random_dissimilarity(rng, int(rng.integers(3, 9)))
    f = centered_transform(d)
    sigma = max(gower_sigma(d), float(rng.uniform(0, 100)))
    return set(optimal_partitions(f, 2)[1]) == set(optimal_partitions(shifted_kernel(f, sigma), 2)[1])


def test_criterion_09_property_suites(acceptance_report):
    suites = [("necessity", _necessity, 200), ("sufficiency", _sufficiency, 200),
              ("round trip", _roundtrip, 200), ("shift equivalence", _shift_equivalence, 200),
              ("eigenvalue shift", _eigen_shift, 100), ("argmin preservation", _argmin, 50)]
    checks = []
    for i, (name, fn, n) in enumerate(suites):
        rng = np.random.default_rng(900 + i)
        fails = sum(not fn(rng) for _ in range(n))
        checks.append((fails == 0, f"{name} {fails}/{n}"))
    elapsed = time.perf_counter() - SUITE_T0
    checks.append((elapsed < 60.0, f"acceptance runtime so far {elapsed:.1f}s"))
    record(acceptance_report, 9, "property suites", checks)


def test_criterion_10_repro_command(acceptance_report, capsys):
    code = main(["paper-repro"])
    report = json.loads(capsys.readouterr().out)
    failed = [c["name"] for c in report["checks"] if c["status"] != "PASS"]
    record(acceptance_report, 10, "paper-repro command", [
        (code == 0, f"exit={code}"),
        (not failed, f"{len(report['checks'])} checks, failed: {failed or 'none'}"),
    ])
