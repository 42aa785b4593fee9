import numpy as np
import pytest

from conftest import rand_linearization_instance
from tmodules.algebra import GF, SingularMatrixError, char_poly
from tmodules.shtuka import (PolyRing, TruncatedRing, berkowitz, check_linearization, laplace_det,
                             linearization_sides, linearize, ring_det)
from tmodules.shtuka.linearize import mat_identity, mat_inverse, mat_mul


def test_rank_one_is_identity(rng):
    F, i, j0, js = rand_linearization_instance(rng, 3, 2, 1, 1)
    It, Jt = linearize(i, j0, js, F)
    assert np.array_equal(It, i) and np.array_equal(Jt, js[0])
    assert check_linearization(i, j0, js, F)


def test_block_layout():
    F = GF.get(2)
    i = np.eye(1, dtype=np.int64)
    It, Jt = linearize(i, [[1]], [[[1]], [[0]], [[1]]], F)
    assert It[:, :, 0].tolist() == [[0, 1, 0], [0, 0, 1], [1, 0, 0]]
    assert Jt[:, :, 0].tolist() == [[1, 0, 0], [0, 1, 0], [1, 0, 1]]


def test_berkowitz_matches_char_poly(rng):
    for k in range(50):
        F = GF.get([2, 3, 5][k % 3])
        m = int(rng.integers(1, 6))
        A = rng.integers(0, F.q, (m, m))
        R = TruncatedRing(F, 1)
        c = berkowitz(R, [[np.array([A[a, b]]) for b in range(m)] for a in range(m)])
        got = [int(x[0]) for x in reversed(c)]
        assert got == char_poly(F, A).c.tolist()


def test_ring_det_matches_laplace(rng):
    for k in range(50):
        F = GF.get([2, 3][k % 2])
        R = TruncatedRing(F, 3)
        m = int(rng.integers(1, 5))
        A = [[rng.integers(0, F.q, 3) for _ in range(m)] for _ in range(m)]
        assert np.array_equal(ring_det(R, A), laplace_det(R, A))


def test_truncated_inverse(rng):
    F = GF.get(5)
    S = TruncatedRing(F, 6)
    for _ in range(20):
        _, i, _, _ = rand_linearization_instance(rng, 5, 3, 1, 6)
        X = mat_inverse(S, i)
        assert np.array_equal(mat_mul(S, i, X), mat_identity(S, 3))


def test_singular_i_rejected():
    F = GF.get(2)
    with pytest.raises(SingularMatrixError):
        check_linearization(np.zeros((2, 2), dtype=np.int64), np.eye(2, dtype=np.int64),
                            [np.eye(2, dtype=np.int64)] * 2, F)


def test_two_by_two_over_f3(rng):
    F, i, j0, js = rand_linearization_instance(rng, 3, 2, 2, 1)
    lhs, rhs = linearization_sides(i, j0, js, F, oracle=True)
    assert np.array_equal(lhs, rhs)


def test_three_by_three_truncated(rng):
    F, i, j0, js = rand_linearization_instance(rng, 2, 3, 3, 4)
    lhs, rhs = linearization_sides(i, j0, js, F, N=4, oracle=True)
    assert np.array_equal(lhs, rhs)


@pytest.mark.parametrize("q", [2, 3, 4, 5])
@pytest.mark.parametrize("N", [1, 3])
def test_random_identity(rng, q, N):
    for k in range(25):
        r = 2 + k % 3
        m = 1 + k % 3
        F, i, j0, js = rand_linearization_instance(rng, q, m, r, N)
        lhs, rhs = linearization_sides(i, j0, js, F, N)
        assert PolyRing(TruncatedRing(F, N)).equal(lhs, rhs)
        if k % 5 == 0:
            lo, ro = linearization_sides(i, j0, js, F, N, oracle=True)
            assert np.array_equal(lo, lhs) and np.array_equal(ro, rhs)
