"""Linear algebra over F_q, over F_q[t] and over F_q((t^-1)).

Matrices over F_q are numpy int arrays.  Matrices over F_q[t] are lists of
lists of :class:`Poly`; matrices over the Laurent field are lists of lists of
:class:`LaurentSeries`.
"""

from __future__ import annotations

import numpy as np

from .fields import GF
from .poly import Poly
from .series import INF, LaurentSeries, PrecisionError


class SingularMatrixError(ArithmeticError):
    pass


# ---------------------------------------------------------------- over F_q

def row_reduce(F: GF, A):
    """Reduced row echelon form. Returns (R, pivot_columns)."""
    R = np.array(A, dtype=np.int64, copy=True)
    if R.ndim != 2:
        raise ValueError("expected a matrix")
    rows, cols = R.shape
    piv = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
        R[r] = F.mul(R[r], F.sinv(int(R[r, c])))
        col = R[:, c].copy()
        col[r] = 0
        for i in np.nonzero(col)[0]:
            R[i] = F.sub(R[i], F.mul(R[r], int(col[i])))
        piv.append(c)
        r += 1
    return R, piv


def rank(F: GF, A):
    A = np.asarray(A)
    if A.size == 0:
        return 0
    return len(row_reduce(F, A)[1])


def nullspace(F: GF, A):
    """Basis of {x : A x = 0} as the rows of a (k, ncols) array."""
    A = np.asarray(A, dtype=np.int64)
    ncols = A.shape[1]
    if A.shape[0] == 0:
        return np.eye(ncols, dtype=np.int64)
    R, piv = row_reduce(F, A)
    free = [c for c in range(ncols) if c not in piv]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for k, fcol in enumerate(free):
        basis[k, fcol] = 1
        for r, pc in enumerate(piv):
            basis[k, pc] = F.neg(int(R[r, fcol]))
    return basis


def solve(F: GF, A, b):
    """One solution x of A x = b, or raise SingularMatrixError."""
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64).reshape(-1, 1)
    R, piv = row_reduce(F, np.hstack([A, b]))
    n = A.shape[1]
    if piv and piv[-1] == n:
        raise SingularMatrixError("inconsistent system")
    x = np.zeros(n, dtype=np.int64)
    for r, c in enumerate(piv):
        x[c] = R[r, n]
    return x


def inverse(F: GF, A):
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[0]
    R, piv = row_reduce(F, np.hstack([A, np.eye(n, dtype=np.int64)]))
    if piv[:n] != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return R[:, n:]


def companion(F: GF, f: Poly):
    """Companion matrix of a monic polynomial (acting on column vectors)."""
    if not f.is_monic() or f.degree < 1:
        raise ValueError("companion matrix needs a monic polynomial of degree >= 1")
    d = f.degree
    C = np.zeros((d, d), dtype=np.int64)
    C[1:, :-1] = np.eye(d - 1, dtype=np.int64)
    C[:, -1] = F.neg(f.c[:d])
    return C


def _hessenberg_charpoly_generic(F: GF, M):
    H = np.array(M, dtype=np.int64, copy=True)
    m = H.shape[0]
    for k in range(m - 2):
        nz = np.nonzero(H[k + 1:, k])[0]
        if nz.size == 0:
            continue
        i = k + 1 + int(nz[0])
        if i != k + 1:
            H[[i, k + 1]] = H[[k + 1, i]]
            H[:, [i, k + 1]] = H[:, [k + 1, i]]
        inv = F.sinv(int(H[k + 1, k]))
        for i in range(k + 2, m):
            u = F.smul(int(H[i, k]), inv)
            if u:
                H[i] = F.sub(H[i], F.mul(H[k + 1], u))
                H[:, k + 1] = F.add(H[:, k + 1], F.mul(H[:, i], u))
    return _charpoly_from_hessenberg(F, H[None])[0]


def _charpoly_from_hessenberg(F: GF, H):
    """Characteristic polynomials of a batch (B, m, m) of upper Hessenberg matrices."""
    B, m, _ = H.shape
    P = [np.ones((B, 1), dtype=np.int64)]
    for k in range(1, m + 1):
        prev = P[k - 1]
        cur = np.zeros((B, k + 1), dtype=np.int64)
        cur[:, 1:] = prev
        cur[:, :k] = F.sub(cur[:, :k], F.mul(H[:, k - 1, k - 1][:, None], prev))
        prodsub = np.ones(B, dtype=np.int64)
        for i in range(k - 1, 0, -1):
            # prod of subdiagonal entries h_{i+1,i} .. h_{k,k-1} (1-indexed)
            prodsub = F.mul(prodsub, H[:, i, i - 1])
            coef = F.mul(H[:, i - 1, k - 1], prodsub)
            pi = P[i - 1]
            cur[:, :i] = F.sub(cur[:, :i], F.mul(coef[:, None], pi))
        P.append(cur)
    return P[m]


def char_poly_batch(F: GF, Ms):
    """Characteristic polynomials det(tI - M) for a stack of square matrices.

    Returns an int array of shape (B, m + 1), coefficients lowest first.
    """
    H = np.array(Ms, dtype=np.int64, copy=True)
    if H.ndim != 3 or H.shape[1] != H.shape[2]:
        raise ValueError("expected a stack of square matrices")
    B, m, _ = H.shape
    if m == 0:
        return np.ones((B, 1), dtype=np.int64)
    if not F.is_prime:
        return np.stack([_hessenberg_charpoly_generic(F, M) for M in H])
    p = F.p
    inv_t = F.inv_t
    idx = np.arange(B)
    for k in range(m - 2):
        mask = H[:, k + 1:, k] != 0
        piv = k + 1 + np.argmax(mask, axis=1)
        swap = piv != k + 1
        if swap.any():
            s = idx[swap]
            ps = piv[swap]
            rows = H[s, k + 1, :].copy()
            H[s, k + 1, :] = H[s, ps, :]
            H[s, ps, :] = rows
            cols = H[s, :, k + 1].copy()
            H[s, :, k + 1] = H[s, :, ps]
            H[s, :, ps] = cols
        inv = inv_t[H[:, k + 1, k]]
        u = (H[:, k + 2:, k] * inv[:, None]) % p
        if not u.any():
            continue
        H[:, k + 2:, :] = (H[:, k + 2:, :] - u[:, :, None] * H[:, k + 1, None, :]) % p
        H[:, :, k + 1] = (H[:, :, k + 1] + np.einsum("bi,bji->bj", u, H[:, :, k + 2:])) % p
    return _charpoly_from_hessenberg(F, H)


def char_poly(F: GF, M) -> Poly:
    """det(t I - M) for a square matrix over F_q."""
    M = np.asarray(M, dtype=np.int64)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"char_poly needs a square matrix, got shape {M.shape}")
    return Poly(F, char_poly_batch(F, M[None])[0])


# ------------------------------------------------------- over F_q[t]

def pm_zeros(F, r, c):
    z = Poly.zero(F)
    return [[z for _ in range(c)] for _ in range(r)]


def pm_identity(F, n):
    M = pm_zeros(F, n, n)
    for i in range(n):
        M[i][i] = Poly.one(F)
    return M


def pm_mul(A, B):
    if not A or not B:
        return []
    F = (A[0][0] if A[0] else B[0][0]).field
    if len(A[0]) != len(B):
        raise ValueError("dimension mismatch")
    out = pm_zeros(F, len(A), len(B[0]))
    for i, row in enumerate(A):
        for k, a in enumerate(row):
            if a.is_zero():
                continue
            for j, b in enumerate(B[k]):
                if not b.is_zero():
                    out[i][j] = out[i][j] + a * b
    return out


def pm_add(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def pm_sub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def pm_scale(A, p: Poly):
    return [[p * a for a in row] for row in A]


def pm_frob(A, s=1):
    return [[a.frob(s) for a in row] for row in A]


def pm_is_zero(A):
    return all(a.is_zero() for row in A for a in row)


def pm_pow(A, k):
    F = A[0][0].field
    R = pm_identity(F, len(A))
    for _ in range(k):
        R = pm_mul(R, A)
    return R


def pm_max_degree(A):
    return max((a.degree for row in A for a in row), default=-1)


def pm_eval_mod(A, pi: Poly):
    return [[a % pi for a in row] for row in A]


def pm_from_constant(F, M):
    return [[Poly.const(F, int(x)) for x in row] for row in np.asarray(M)]


def pm_constant_part(A):
    """The matrix of constant terms, as an F_q array."""
    return np.array([[a[0] for a in row] for row in A], dtype=np.int64)


def pm_det(A):
    """Determinant over F_q[t] by fraction-free elimination (Bareiss)."""
    n = len(A)
    if n == 0:
        raise ValueError("empty matrix")
    F = A[0][0].field
    M = [row[:] for row in A]
    sign = 1
    prev = Poly.one(F)
    for k in range(n - 1):
        if M[k][k].is_zero():
            for i in range(k + 1, n):
                if not M[i][k].is_zero():
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return Poly.zero(F)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    d = M[n - 1][n - 1]
    return d if sign == 1 else -d


# ------------------------------------------------ over F_q((t^-1))

def lm_from_pm(A, var="t"):
    return [[LaurentSeries.from_poly(a, var) for a in row] for row in A]


def lm_mul(A, B):
    n, m, p = len(A), len(B), len(B[0])
    if len(A[0]) != m:
        raise ValueError("dimension mismatch")
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            acc = A[i][0] * B[0][j]
            for k in range(1, m):
                acc = acc + A[i][k] * B[k][j]
            row.append(acc)
        out.append(row)
    return out


def lm_matvec(A, x):
    return [sum((A[i][k] * x[k] for k in range(1, len(x))), A[i][0] * x[0])
            for i in range(len(A))]


def lm_add(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def lm_sub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def lm_frob(A, s=1):
    return [[a.frob(s) for a in row] for row in A]


def lm_truncate(A, prec):
    return [[a.truncate(prec) for a in row] for row in A]


def lm_val(A):
    """Minimum valuation of the entries."""
    return min(a.val for row in A for a in row)


def lm_prec(A):
    return min(a.prec for row in A for a in row)


def lm_equals(A, B, prec=None):
    return all(a.equals(b, prec) for ra, rb in zip(A, B) for a, b in zip(ra, rb))


def lm_identity(F, n, var="t"):
    return [[LaurentSeries.one(F, var) if i == j else LaurentSeries.zero(F, var=var)
             for j in range(n)] for i in range(n)]


def _pivot_index(col):
    best, bv = None, INF
    for i, a in enumerate(col):
        if a.c.size and a.v < bv:
            best, bv = i, a.v
    return best


def lm_solve(A, B, prec):
    """Solve A X = B over the Laurent field (A square).

    Gaussian elimination pivoting on the entry of least valuation; exact
    inverses are expanded to the working precision ``prec``.  The result's
    precision is whatever survives the elimination.
    """
    n = len(A)
    M = [list(A[i]) + list(B[i]) for i in range(n)]
    w = len(M[0])
    for k in range(n):
        i = _pivot_index([M[r][k] for r in range(k, n)])
        if i is None:
            raise SingularMatrixError("Laurent system singular at working precision")
        i += k
        M[k], M[i] = M[i], M[k]
        piv = M[k][k]
        inv = piv.inverse(prec - 2 * piv.v) if piv.exact else piv.inverse()
        M[k] = [M[k][j] * inv if j > k else M[k][j] for j in range(w)]
        for r in range(n):
            if r == k or M[r][k].is_zero():
                continue
            f = M[r][k]
            M[r] = [M[r][j] - f * M[k][j] if j > k else M[r][j] for j in range(w)]
    return [[M[i][n + j] for j in range(w - n)] for i in range(n)]


def lm_det(A, prec=None):
    """Determinant over the Laurent field.

    Uses the Leibniz/cofactor expansion for n <= 3 (no divisions), and
    elimination with precision ``prec`` otherwise.
    """
    n = len(A)
    if n == 1:
        return A[0][0]
    if n == 2:
        return A[0][0] * A[1][1] - A[0][1] * A[1][0]
    if n == 3:
        return (A[0][0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1])
                - A[0][1] * (A[1][0] * A[2][2] - A[1][2] * A[2][0])
                + A[0][2] * (A[1][0] * A[2][1] - A[1][1] * A[2][0]))
    if prec is None:
        prec = lm_prec(A)
        if prec == INF:
            raise PrecisionError("determinant of exact matrix with n > 3 needs prec")
    M = [list(r) for r in A]
    F = M[0][0].field
    det = LaurentSeries.one(F, M[0][0].var)
    for k in range(n):
        i = _pivot_index([M[r][k] for r in range(k, n)])
        if i is None:
            return LaurentSeries.zero(F, prec, M[0][0].var)
        i += k
        if i != k:
            M[k], M[i] = M[i], M[k]
            det = -det
        piv = M[k][k]
        det = det * piv
        inv = piv.inverse(prec - piv.v) if piv.exact else piv.inverse()
        for r in range(k + 1, n):
            if M[r][k].is_zero():
                continue
            f = M[r][k] * inv
            M[r] = [M[r][j] - f * M[k][j] if j > k else M[r][j] for j in range(n)]
    return det


def sylvester_solve(A, B, C, prec):
    """Solve X A - B X = C for square Laurent matrices.

    Vectorises to the Kronecker system (A^T (x) I - I (x) B) vec(X) = vec(C);
    a singular system means the solution is not unique.
    """
    n = len(A)
    if any(len(M) != n for M in (B, C)):
        raise ValueError("sylvester_solve needs square matrices of one size")
    F = A[0][0].field
    var = A[0][0].var
    zero = LaurentSeries.zero(F, var=var)
    # unknown index: (i, j) -> i * n + j  for X[i][j]
    K = [[zero for _ in range(n * n)] for _ in range(n * n)]
    rhs = [[C[i][j]] for i in range(n) for j in range(n)]
    for i in range(n):
        for j in range(n):
            row = i * n + j
            # (X A)[i][j] = sum_k X[i][k] A[k][j]
            for k in range(n):
                K[row][i * n + k] = K[row][i * n + k] + A[k][j]
            # (B X)[i][j] = sum_k B[i][k] X[k][j]
            for k in range(n):
                K[row][k * n + j] = K[row][k * n + j] - B[i][k]
    try:
        sol = lm_solve(K, rhs, prec)
    except SingularMatrixError as exc:
        raise SingularMatrixError("non-unique exponential coefficient: "
                                  "Sylvester system is singular") from exc
    return [[sol[i * n + j][0] for j in range(n)] for i in range(n)]
