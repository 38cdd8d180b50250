import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gowerk import reference_data as ref
from gowerk.errors import (
    DimensionMismatch,
    InvalidSVector,
    NegativeSquaredDistance,
    NonFiniteEntry,
    NotPositiveSemidefinite,
)
from gowerk.euclidesation import euclidise
from gowerk.symmat import min_eigenvalue, sym_eigen
from gowerk.transforms import (
    as_svector,
    centered_transform,
    embed,
    gower_transform,
    is_euclidean,
    pairwise_distances,
    recover_distances,
    schoenberg_exp_kernel,
    squared_distances_from_kernel,
)

from conftest import random_dissimilarity, random_points, random_svector

TWO = np.array([[0.0, 2.0], [2.0, 0.0]])


def projector_oracle(d, s):
    """Three-factor product formed literally."""
    m = len(s)
    one = np.ones((m, 1))
    s = np.asarray(s, float).reshape(m, 1)
    left = np.eye(m) - one @ s.T
    return left @ (-0.5 * d * d) @ left.T


# -- hand-evaluated cases ------------------------------------------------------

def test_two_point_transform():
    np.testing.assert_allclose(gower_transform(TWO, [1.0, 0.0]), [[0, 0], [0, 4]])


def test_two_point_centered():
    np.testing.assert_allclose(centered_transform(TWO), [[1, -1], [-1, 1]])


def test_zero_matrix():
    z = np.zeros((3, 3))
    np.testing.assert_array_equal(gower_transform(z, [0.2, 0.3, 0.5]), z)
    np.testing.assert_array_equal(centered_transform(z), z)
    np.testing.assert_array_equal(recover_distances(z), z)


def test_recover_two_point():
    np.testing.assert_allclose(recover_distances([[0, 0], [0, 4]]), TWO)


def test_embed_two_point():
    e = embed([[0.0, 0.0], [0.0, 4.0]])
    assert e.rank == 1
    np.testing.assert_allclose(np.abs(e.points[:, 0]), [0, 2])


def test_embed_zero_kernel():
    e = embed(np.zeros((4, 4)))
    assert e.rank == 0 and e.points.shape == (4, 0)


def test_exp_kernel():
    k = schoenberg_exp_kernel(TWO, 0.25)
    np.testing.assert_allclose(np.diag(k), 1.0)
    assert k[0, 1] == pytest.approx(np.exp(-1.0), abs=1e-12)
    big = schoenberg_exp_kernel(ref.NE_D, 1e6)
    np.testing.assert_allclose(big, np.eye(6), atol=1e-12)
    with pytest.raises(ValueError):
        schoenberg_exp_kernel(TWO, 0.0)


def test_is_euclidean_examples():
    flag, lam = is_euclidean([[0.0]])
    assert flag and lam == 0.0
    flag, lam = is_euclidean(ref.d0())
    assert flag and abs(lam) < 1e-6
    flag, lam = is_euclidean(ref.NE_D)
    assert not flag and lam == pytest.approx(-757.205, abs=1e-3)


# -- worked-example data -------------------------------------------------------

def test_reconstructed_s_vectors_round_to_printed():
    np.testing.assert_allclose(np.round(ref.S, 2), ref.S_PRINTED, atol=1e-12)
    np.testing.assert_allclose(np.round(ref.S_PRIME, 2), ref.S_PRIME_PRINTED, atol=1e-12)
    assert ref.S.sum() == pytest.approx(1.0, abs=1e-15)
    assert ref.S_PRIME.sum() == pytest.approx(1.0, abs=1e-15)


def test_d0_matches_printed():
    assert np.abs(ref.d0() - ref.D0_PRINTED).max() <= 0.05


@pytest.mark.parametrize("s, printed", [(ref.S, ref.F_PRINTED), (ref.S_PRIME, ref.F_PRIME_PRINTED)])
def test_worked_kernels(s, printed):
    f = gower_transform(ref.d0(), s)
    assert np.abs(f - printed).max() <= 0.05
    np.testing.assert_allclose(f, projector_oracle(ref.d0(), s), atol=1e-8)


def test_worked_kernel_landmarks():
    f = gower_transform(ref.d0(), ref.S)
    assert f[0, 0] == pytest.approx(3755.0, abs=0.05)
    assert f[0, 3] == pytest.approx(-5143.7, abs=0.05)


def test_worked_embedding():
    f = gower_transform(ref.d0(), ref.S)
    e = embed(f)
    assert e.rank == 4
    d = pairwise_distances(e.points)
    assert np.sum((d - ref.d0()) ** 2) <= 1e-12
    assert np.abs(d - ref.D0_PRINTED).max() <= 0.05
    assert np.sum((recover_distances(e.gram()) - ref.d0()) ** 2) <= 1e-12


def test_six_point_centered():
    f = centered_transform(ref.NE_D)
    assert f[0, 0] == pytest.approx(266.7, abs=0.05)
    assert np.abs(f - ref.NE_F_PRINTED).max() <= 0.05


# -- errors --------------------------------------------------------------------

def test_svector_errors():
    with pytest.raises(InvalidSVector):
        gower_transform(TWO, [0.5, 0.6])
    with pytest.raises(DimensionMismatch):
        gower_transform(TWO, [0.2, 0.3, 0.5])
    with pytest.raises(NonFiniteEntry):
        as_svector([np.nan, 1.0])


def test_printed_s_is_rejected():
    # the one-decimal rounding leaves the printed vector summing to 1.01
    with pytest.raises(InvalidSVector):
        gower_transform(ref.d0(), ref.S_PRINTED)


def test_embed_rejects_indefinite():
    with pytest.raises(NotPositiveSemidefinite) as info:
        embed(centered_transform(ref.NE_D))
    assert info.value.eigenvalue == pytest.approx(-757.205, abs=1e-3)


def test_recover_rejects_non_gram():
    with pytest.raises(NegativeSquaredDistance):
        recover_distances([[0.0, 5.0], [5.0, 0.0]])


def test_recover_clamps_tiny_negatives():
    f = np.array([[1.0, 1.0 + 1e-12], [1.0 + 1e-12, 1.0]])
    np.testing.assert_array_equal(recover_distances(f), np.zeros((2, 2)))


# -- invariants ----------------------------------------------------------------

def test_necessity(rng):
    for _ in range(200):
        m, dim = int(rng.integers(2, 13)), int(rng.integers(1, 6))
        d = pairwise_distances(random_points(rng, m, dim))
        for _ in range(5):
            w = sym_eigen(gower_transform(d, random_svector(rng, m))).eigenvalues
            assert w[-1] >= -1e-8 * max(1.0, abs(w[0]))


def test_round_trip_and_shift_equivalence(rng):
    for _ in range(200):
        m, dim = int(rng.integers(2, 13)), int(rng.integers(1, 6))
        d = pairwise_distances(random_points(rng, m, dim))
        tol = 1e-9 * max(1.0, d.max())
        r1 = recover_distances(gower_transform(d, random_svector(rng, m)))
        r2 = recover_distances(gower_transform(d, random_svector(rng, m)))
        assert np.abs(r1 - d).max() <= tol
        assert np.abs(r1 - r2).max() <= tol


def test_sufficiency(rng):
    tested = 0
    while tested < 200:
        m = int(rng.integers(2, 9))
        d = random_dissimilarity(rng, m)
        f = centered_transform(d)
        if min_eigenvalue(f) < -1e-8 * max(1.0, abs(f).max()):
            # repair so that the centred kernel is PSD, then retest
            d = euclidise(d).repaired
            f = centered_transform(d)
        y = embed(f).points
        assert np.abs(pairwise_distances(y) - d).max() <= 1e-7 * max(1.0, d.max())
        tested += 1


def test_recombination_identity(rng):
    for _ in range(50):
        m = int(rng.integers(2, 10))
        s, t = random_svector(rng, m), random_svector(rng, m)
        one = np.ones((m, 1))
        pt = np.eye(m) - one @ t[None, :]
        ps = np.eye(m) - one @ s[None, :]
        np.testing.assert_allclose(pt @ ps, pt, atol=1e-12 * max(1, np.abs(s).max() * np.abs(t).max()) * m)
        d = pairwise_distances(random_points(rng, m, 3))
        ft = gower_transform(d, t)
        via_s = pt @ gower_transform(d, s) @ pt.T
        assert np.abs(ft - via_s).max() <= 1e-8 * max(1.0, np.abs(ft).max())


def test_singularity(rng):
    for _ in range(50):
        m = int(rng.integers(1, 12))
        s = random_svector(rng, m)
        p = np.eye(m) - np.ones((m, 1)) @ s[None, :]
        assert np.abs(p @ np.ones(m)).max() <= 1e-12 * max(1.0, np.abs(s).max() * m)


def test_kernel_rows_sum_against_s(rng):
    # F s = 0 for any valid s: the projection annihilates s
    d = random_dissimilarity(rng, 7)
    s = random_svector(rng, 7)
    f = gower_transform(d, s)
    assert np.abs(f @ s).max() <= 1e-9 * max(1.0, np.abs(f).max())


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 8), st.integers(1, 4), st.integers(0, 2**32 - 1))
def test_distances_from_kernel_match_input(m, dim, seed):
    r = np.random.default_rng(seed)
    d = pairwise_distances(r.uniform(-10, 10, size=(m, dim)))
    f = centered_transform(d)
    dsq = squared_distances_from_kernel(f)
    assert np.abs(dsq - d * d).max() <= 1e-9 * max(1.0, (d * d).max())
