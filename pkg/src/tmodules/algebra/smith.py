"""Smith normal form over F_q[t] with transforms."""

from __future__ import annotations

from .linalg import pm_identity, pm_mul
from .poly import Poly


class SmithDecomposition:
    """U * M * V = D with D diagonal (invariant factors d_1 | d_2 | ...).

    ``diag`` holds min(rows, cols) entries, monic or zero; ``rank`` counts the
    nonzero ones (they come first).
    """

    def __init__(self, U, V, diag, shape):
        self.U, self.V, self.diag, self.shape = U, V, diag, shape
        self.rank = sum(1 for d in diag if not d.is_zero())

    @property
    def invariant_factors(self):
        return [d for d in self.diag if not d.is_zero()]

    def nontrivial_factors(self):
        """Invariant factors of positive degree (the torsion of the cokernel)."""
        return [d for d in self.invariant_factors if d.degree > 0]

    def D(self):
        F = self.diag[0].field if self.diag else None
        rows, cols = self.shape
        out = [[Poly.zero(F) for _ in range(cols)] for _ in range(rows)]
        for i, d in enumerate(self.diag):
            out[i][i] = d
        return out

    def kernel_basis(self):
        """Columns of V spanning ker(M) over F_q[t] (as lists of Poly)."""
        rows, cols = self.shape
        return [[self.V[i][j] for i in range(cols)] for j in range(self.rank, cols)]

    def torsion_order(self):
        """Product of the invariant factors (|coker| when the cokernel is torsion)."""
        F = self.U[0][0].field if self.U else None
        out = Poly.one(F)
        for d in self.invariant_factors:
            out = out * d
        return out

    def cokernel_free_rank(self):
        return self.shape[0] - self.rank


def _swap_rows(M, i, j):
    M[i], M[j] = M[j], M[i]


def _swap_cols(M, i, j):
    for row in M:
        row[i], row[j] = row[j], row[i]


def _row_axpy(M, dst, src, c):
    # row dst -= c * row src
    M[dst] = [a - c * b for a, b in zip(M[dst], M[src])]


def _col_axpy(M, dst, src, c):
    for row in M:
        row[dst] = row[dst] - c * row[src]


def smith_normal_form(M) -> SmithDecomposition:
    """Smith normal form of a matrix over F_q[t] (list of lists of Poly).

    Euclidean elimination pivoting on an entry of minimal degree.
    """
    rows = len(M)
    cols = len(M[0]) if rows else 0
    if rows == 0 or cols == 0:
        raise ValueError("smith_normal_form needs a nonempty matrix")
    F = M[0][0].field
    A = [list(r) for r in M]
    U = pm_identity(F, rows)
    V = pm_identity(F, cols)
    k = 0
    while k < min(rows, cols):
        # minimal-degree pivot in the trailing block
        best = None
        for i in range(k, rows):
            for j in range(k, cols):
                a = A[i][j]
                if not a.is_zero() and (best is None or a.degree < best[0]):
                    best = (a.degree, i, j)
        if best is None:
            break
        _, i, j = best
        if i != k:
            _swap_rows(A, i, k)
            _swap_rows(U, i, k)
        if j != k:
            _swap_cols(A, j, k)
            _swap_cols(V, j, k)
        while True:
            piv = A[k][k]
            dirty = False
            for i in range(k + 1, rows):
                if A[i][k].is_zero():
                    continue
                qt, r = A[i][k].divmod(piv)
                _row_axpy(A, i, k, qt)
                _row_axpy(U, i, k, qt)
                if not r.is_zero():
                    dirty = True
            for j in range(k + 1, cols):
                if A[k][j].is_zero():
                    continue
                qt, r = A[k][j].divmod(piv)
                _col_axpy(A, j, k, qt)
                _col_axpy(V, j, k, qt)
                if not r.is_zero():
                    dirty = True
            if dirty:
                # a remainder of smaller degree exists in row/col k: move it to the pivot
                best = None
                for i in range(k, rows):
                    a = A[i][k]
                    if not a.is_zero() and (best is None or a.degree < best[0]):
                        best = (a.degree, i, k)
                for j in range(k, cols):
                    a = A[k][j]
                    if not a.is_zero() and (best is None or a.degree < best[0]):
                        best = (a.degree, k, j)
                _, i, j = best
                if i != k:
                    _swap_rows(A, i, k)
                    _swap_rows(U, i, k)
                if j != k:
                    _swap_cols(A, j, k)
                    _swap_cols(V, j, k)
                continue
            # row and column are clear; enforce divisibility of the trailing block
            bad = None
            for i in range(k + 1, rows):
                for j in range(k + 1, cols):
                    if not (A[i][j] % piv).is_zero():
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            # row k += row bad, then continue reducing
            one = Poly.one(F)
            _row_axpy(A, k, bad, -one)
            _row_axpy(U, k, bad, -one)
        k += 1
    diag = []
    for i in range(min(rows, cols)):
        d = A[i][i]
        if not d.is_zero() and not d.is_monic():
            inv = F.sinv(d.lead)
            U[i] = [u.scale(inv) for u in U[i]]
            d = d.scale(inv)
        diag.append(d)
    return SmithDecomposition(U, V, diag, (rows, cols))


def check_smith(M, S: SmithDecomposition):
    """True iff U M V equals the diagonal matrix and the divisibility chain holds."""
    UMV = pm_mul(pm_mul(S.U, M), S.V)
    D = S.D()
    if any(not (a - b).is_zero() for ra, rb in zip(UMV, D) for a, b in zip(ra, rb)):
        return False
    inv = S.invariant_factors
    for a, b in zip(inv, inv[1:]):
        if not (b % a).is_zero():
            return False
    return all(d.is_zero() for d in S.diag[len(inv):])
