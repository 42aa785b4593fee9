import numpy as np
import pytest

from conftest import rand_poly
from tmodules.algebra import (GF, Poly, SingularMatrixError, char_poly, check_smith, companion,
                              nullspace, rank, smith_normal_form)
from tmodules.algebra.linalg import inverse, solve


def rand_matrix(F, rng, r, c):
    return rng.integers(0, F.q, (r, c))


def test_rank_nullity(rng):
    for k in range(100):
        F = GF.get([2, 3, 4, 5][k % 4])
        r, c = (int(x) for x in rng.integers(1, 6, 2))
        A = rand_matrix(F, rng, r, c)
        K = nullspace(F, A)
        K = np.asarray(K).reshape(-1, c) if len(K) else np.zeros((0, c), dtype=np.int64)
        assert rank(F, A) + K.shape[0] == c
        for v in K:
            assert not np.any(F.matmul(A, v[:, None]))


def test_inverse_and_solve(rng):
    F = GF.get(7)
    done = 0
    while done < 30:
        A = rand_matrix(F, rng, 4, 4)
        if rank(F, A) < 4:
            with pytest.raises(SingularMatrixError):
                inverse(F, A)
            continue
        X = inverse(F, A)
        assert np.array_equal(F.matmul(A, X), np.eye(4, dtype=np.int64))
        b = rng.integers(0, 7, 4)
        x = solve(F, A, b)
        assert np.array_equal(F.matmul(A, np.asarray(x)[:, None])[:, 0], b)
        done += 1


def test_char_poly_of_companion(rng):
    for k in range(50):
        F = GF.get([2, 3, 5][k % 3])
        f = rand_poly(F, rng, 6, monic=True)
        if f.degree < 1:
            continue
        assert char_poly(F, companion(F, f)) == f


def test_char_poly_conjugation_invariant(rng):
    F = GF.get(5)
    for _ in range(30):
        A = rand_matrix(F, rng, 4, 4)
        P = rand_matrix(F, rng, 4, 4)
        if rank(F, P) < 4:
            continue
        B = F.matmul(F.matmul(inverse(F, P), A), P)
        assert char_poly(F, A) == char_poly(F, B)


def rand_poly_matrix(F, rng, r, c, maxdeg=2):
    return [[rand_poly(F, rng, maxdeg) for _ in range(c)] for _ in range(r)]


def test_smith_remultiplication(rng):
    for k in range(120):
        F = GF.get([2, 3, 4][k % 3])
        r, c = (int(x) for x in rng.integers(1, 5, 2))
        M = rand_poly_matrix(F, rng, r, c)
        S = smith_normal_form(M)
        assert check_smith(M, S)
        for d in S.invariant_factors:
            assert d.is_monic()


def test_smith_of_t_minus_theta_gives_char_poly(rng):
    F = GF.get(3)
    t = Poly.x(F)
    for _ in range(30):
        T = rand_matrix(F, rng, 3, 3)
        P = [[(t if i == j else Poly.zero(F)) - Poly.const(F, int(T[i, j])) for j in range(3)]
             for i in range(3)]
        S = smith_normal_form(P)
        assert S.torsion_order() == char_poly(F, T)


def test_smith_kernel_basis():
    F = GF.get(2)
    t = Poly.x(F)
    one = Poly.one(F)
    # the row (t, t+1) has kernel spanned by (t+1, t)
    S = smith_normal_form([[t, t + one]])
    K = S.kernel_basis()
    assert len(K) == 1
    v = K[0]
    assert (t * v[0] + (t + one) * v[1]).is_zero()
    assert S.cokernel_free_rank() == 0
