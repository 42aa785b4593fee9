"""Companion linearization of a Frobenius-type pencil and its determinant identity.

For square matrices i, j_0, j_1, ..., j_r over a commutative ring S, the block
operators on M^r

    i~(x_1..x_r) = (-x_2, ..., -x_r, i(x_1))
    j~(x_1..x_r) = (-j_0 x_1, ..., -j_0 x_{r-1}, sum_s j_s x_s)

satisfy det(1 - T i~^-1 j~) = det(1 - sum_s T^s i^-1 j_s j_0^(s-1)) when i is
invertible.  S is F_q or F_q[t]/(t^N); ring elements are length-N arrays.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from ..algebra import GF
from ..algebra.linalg import SingularMatrixError, inverse as fq_inverse


class TruncatedRing:
    """F_q[t]/(t^N) (N = 1 gives F_q); elements are int arrays of length N."""

    def __init__(self, F: GF, N=1):
        self.F = F
        self.N = N

    def zero(self):
        return np.zeros(self.N, dtype=np.int64)

    def one(self):
        a = self.zero()
        a[0] = 1
        return a

    def add(self, a, b):
        return self.F.add(a, b)

    def sub(self, a, b):
        return self.F.sub(a, b)

    def neg(self, a):
        return self.F.neg(a)

    def mul(self, a, b):
        return self.F.conv(a, b)[:self.N]

    def is_zero(self, a):
        return not np.any(a)

    def equal(self, a, b):
        return np.array_equal(a, b)


class PolyRing:
    """R[T] over a coefficient ring R; elements are 2D arrays (T-degree, R-element)."""

    def __init__(self, base: TruncatedRing):
        self.base = base
        self.N = base.N

    def _norm(self, a):
        k = a.shape[0]
        while k > 1 and not np.any(a[k - 1]):
            k -= 1
        return a[:max(k, 1)]

    def zero(self):
        return np.zeros((1, self.N), dtype=np.int64)

    def one(self):
        a = self.zero()
        a[0, 0] = 1
        return a

    def const(self, c):
        return np.asarray(c, dtype=np.int64).reshape(1, self.N)

    def _pad(self, a, b):
        m = max(a.shape[0], b.shape[0])
        A = np.zeros((m, self.N), dtype=np.int64)
        B = np.zeros((m, self.N), dtype=np.int64)
        A[:a.shape[0]] = a
        B[:b.shape[0]] = b
        return A, B

    def add(self, a, b):
        A, B = self._pad(a, b)
        return self._norm(self.base.F.add(A, B))

    def sub(self, a, b):
        A, B = self._pad(a, b)
        return self._norm(self.base.F.sub(A, B))

    def neg(self, a):
        return self.base.F.neg(a)

    def mul(self, a, b):
        out = np.zeros((a.shape[0] + b.shape[0] - 1, self.N), dtype=np.int64)
        for i in range(a.shape[0]):
            if not np.any(a[i]):
                continue
            for j in range(b.shape[0]):
                if np.any(b[j]):
                    out[i + j] = self.base.add(out[i + j], self.base.mul(a[i], b[j]))
        return self._norm(out)

    def is_zero(self, a):
        return not np.any(a)

    def equal(self, a, b):
        return np.array_equal(self._norm(a), self._norm(b))


# ------------------------------------------------------------------ determinants

def berkowitz(R, A):
    """Coefficients of det(x I - A), highest degree first, over a commutative ring R."""
    n = len(A)
    if n == 0:
        return [R.one()]
    vect = [R.one(), R.neg(A[0][0])]
    for r in range(1, n):
        Rrow = A[r][:r]
        X = [A[i][r] for i in range(r)]
        col = [R.one(), R.neg(A[r][r])]
        for _ in range(r):
            acc = R.zero()
            for a, x in zip(Rrow, X):
                acc = R.add(acc, R.mul(a, x))
            col.append(R.neg(acc))
            X = [_dot(R, A[i][:r], X) for i in range(r)]
        new = []
        for i in range(r + 2):
            acc = R.zero()
            for j in range(min(i, r) + 1):
                if j < len(vect):
                    acc = R.add(acc, R.mul(col[i - j], vect[j]))
            new.append(acc)
        vect = new
    return vect


def _dot(R, row, X):
    acc = R.zero()
    for a, x in zip(row, X):
        acc = R.add(acc, R.mul(a, x))
    return acc


def ring_det(R, A):
    n = len(A)
    c = berkowitz(R, A)[n]
    return c if n % 2 == 0 else R.neg(c)


def laplace_det(R, A):
    """Determinant by memoized Laplace expansion along rows (test oracle)."""
    n = len(A)

    @lru_cache(maxsize=None)
    def rec(row, cols):
        if row == n:
            return R.one()
        acc = R.zero()
        sign = 0
        for k, c in enumerate(cols):
            a = A[row][c]
            if not R.is_zero(a):
                sub = rec(row + 1, cols[:k] + cols[k + 1:])
                term = R.mul(a, sub)
                acc = R.sub(acc, term) if sign else R.add(acc, term)
            sign ^= 1
        return acc

    return rec(0, tuple(range(n)))


# ------------------------------------------------------------------ matrices over S

def _as_ring_matrix(M, N):
    M = np.asarray(M, dtype=np.int64)
    if M.ndim == 2:
        M = M[:, :, None]
        if N > 1:
            M = np.concatenate([M, np.zeros(M.shape[:2] + (N - 1,), dtype=np.int64)], axis=2)
    if M.shape[2] != N:
        raise ValueError("matrix entries have the wrong length for the ring")
    return M


def mat_mul(S: TruncatedRing, A, B):
    m, k = A.shape[:2]
    p = B.shape[1]
    out = np.zeros((m, p, S.N), dtype=np.int64)
    for i in range(m):
        for j in range(p):
            acc = S.zero()
            for l in range(k):
                if np.any(A[i, l]) and np.any(B[l, j]):
                    acc = S.add(acc, S.mul(A[i, l], B[l, j]))
            out[i, j] = acc
    return out


def mat_identity(S, m):
    out = np.zeros((m, m, S.N), dtype=np.int64)
    for i in range(m):
        out[i, i, 0] = 1
    return out


def mat_inverse(S: TruncatedRing, A):
    """Inverse over F_q[t]/(t^N): invert mod t, then Newton-lift."""
    F = S.F
    m = A.shape[0]
    try:
        X0 = fq_inverse(F, A[:, :, 0])
    except SingularMatrixError as exc:
        raise SingularMatrixError("i is not invertible") from exc
    X = np.zeros_like(A)
    X[:, :, 0] = X0
    two_I = mat_identity(S, m)
    two_I = F.add(two_I, two_I)
    k = 1
    while k < S.N:
        X = mat_mul(S, X, F.sub(two_I, mat_mul(S, A, X)))
        k *= 2
    return X


def linearize(i, j0, js, F: GF, N=1):
    """Block matrices (i~, j~) on M^r, r = len(js) >= 1."""
    S = TruncatedRing(F, N)
    i = _as_ring_matrix(i, N)
    j0 = _as_ring_matrix(j0, N)
    js = [_as_ring_matrix(j, N) for j in js]
    r = len(js)
    if r < 1:
        raise ValueError("need at least j_1")
    m = i.shape[0]
    It = np.zeros((m * r, m * r, N), dtype=np.int64)
    Jt = np.zeros((m * r, m * r, N), dtype=np.int64)
    negI = F.neg(mat_identity(S, m))
    negj0 = F.neg(j0)

    def blk(k):
        return slice(k * m, (k + 1) * m)

    for k in range(r - 1):
        It[blk(k), blk(k + 1)] = negI
        Jt[blk(k), blk(k)] = negj0
    It[blk(r - 1), blk(0)] = i
    for s in range(r):
        Jt[blk(r - 1), blk(s)] = js[s]
    return It, Jt


def _one_minus_T(S, M):
    """The matrix 1 - T M over S[T]."""
    P = PolyRing(S)
    m = M.shape[0]
    out = []
    for a in range(m):
        row = []
        for b in range(m):
            e = np.zeros((2, S.N), dtype=np.int64)
            if a == b:
                e[0, 0] = 1
            e[1] = S.neg(M[a, b])
            row.append(P._norm(e))
        out.append(row)
    return out


def linearization_sides(i, j0, js, F: GF, N=1, oracle=False):
    """(lhs, rhs): det(1 - T i~^-1 j~) and det(1 - sum T^s i^-1 j_s j_0^(s-1)).

    Both are returned as 2D arrays (coefficient of T^k in row k).  ``oracle``
    switches the determinant to Laplace expansion.
    """
    S = TruncatedRing(F, N)
    P = PolyRing(S)
    It, Jt = linearize(i, j0, js, F, N)
    M = mat_mul(S, mat_inverse(S, It), Jt)
    if oracle:
        lhs = laplace_det(P, _one_minus_T(S, M))
    else:
        c = berkowitz(S, [[M[a, b] for b in range(M.shape[1])] for a in range(M.shape[0])])
        lhs = P._norm(np.array(c, dtype=np.int64).reshape(len(c), N))
    ii = _as_ring_matrix(i, N)
    j0m = _as_ring_matrix(j0, N)
    iinv = mat_inverse(S, ii)
    m = ii.shape[0]
    total = [[P.one() if a == b else P.zero() for b in range(m)] for a in range(m)]
    pw = mat_identity(S, m)
    for s, js_ in enumerate(js, start=1):
        X = mat_mul(S, mat_mul(S, iinv, _as_ring_matrix(js_, N)), pw)
        for a in range(m):
            for b in range(m):
                e = np.zeros((s + 1, N), dtype=np.int64)
                e[s] = S.neg(X[a, b])
                total[a][b] = P.add(total[a][b], e)
        pw = mat_mul(S, pw, j0m)
    rhs = laplace_det(P, total) if oracle else ring_det(P, total)
    return P._norm(lhs), P._norm(rhs)


def check_linearization(i, j0, js, F: GF, N=1):
    lhs, rhs = linearization_sides(i, j0, js, F, N)
    return PolyRing(TruncatedRing(F, N)).equal(lhs, rhs)


__all__ = ["TruncatedRing", "PolyRing", "berkowitz", "ring_det", "laplace_det", "linearize",
           "linearization_sides", "check_linearization", "mat_inverse", "mat_mul"]
