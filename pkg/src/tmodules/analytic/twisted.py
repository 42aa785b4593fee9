"""The twisted k((t^-1))-structure on Lie(E)(K_inf) and lattices in it.

A scalar f acts by f(A_0) = sum_j D_j(f)(z) N^j (D_j Hasse derivatives,
A_0 = z I + N).  Twisted coordinates of x are the f in k((t^-1))^n with
x = sum_i f_i(A_0) e_i =: T(f) = f + Delta f, Delta = sum_{j>=1} N^j D_j.
When Delta is nilpotent, T^-1 = sum_k (-Delta)^k.
"""

from __future__ import annotations

import numpy as np

from ..algebra import LaurentSeries, Poly, PrecisionError
from ..algebra.linalg import (SingularMatrixError, lm_det, pm_identity, pm_is_zero,
                              pm_max_degree, pm_mul, solve)
from ..tmodule.model import TModule
from .vectors import TVAR, ZVAR, pm_apply, vadd, vsub, vwith_var


class TwistedCoordinatesError(ValueError):
    pass


def _pm_add(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def _pm_hasse(A, u):
    return [[a.hasse(u) for a in row] for row in A]


def _pm_scale_int(A, c, F):
    c = F.from_int(c)
    return [[a.scale(c) for a in row] for row in A]


def compose_diff_ops(P, Q, F):
    """Composition of differential operators sum_a M_a D_a (dicts a -> PolyMatrix).

    Uses D_u(M f) = sum_{v+w=u} D_v(M) D_w(f) and D_w D_b = C(w+b, w) D_{w+b}.
    """
    out = {}
    for a, Ma in P.items():
        for b, Mb in Q.items():
            for v in range(a + 1):
                w = a - v
                c = F.binom(w + b, w)
                if c == 0:
                    continue
                DvMb = _pm_hasse(Mb, v)
                if pm_is_zero(DvMb):
                    continue
                term = _pm_scale_int(pm_mul(Ma, DvMb), c, F)
                k = w + b
                out[k] = _pm_add(out[k], term) if k in out else term
    return {k: M for k, M in out.items() if not pm_is_zero(M)}


class TwistedSpace:
    """Lie(E)(K_inf) with t acting through A_0."""

    def __init__(self, E: TModule, nil_check_order=None):
        self.E = E
        self.field = E.field
        self.n = E.n
        self.N = E.N
        F = self.field
        self.Npow = [pm_identity(F, self.n)]
        for _ in range(1, self.n):
            self.Npow.append(pm_mul(self.Npow[-1], self.N))
        self.constant_N = E.nilpotent_is_constant()
        self._delta_order = self._nilpotency_order(nil_check_order)

    def _delta(self):
        return {j: self.Npow[j] for j in range(1, self.n) if not pm_is_zero(self.Npow[j])}

    def _nilpotency_order(self, bound):
        """Smallest k with Delta^k = 0, or None if not found up to ``bound``."""
        D = self._delta()
        if not D:
            return 1
        if self.constant_N:
            return self.n
        F = self.field
        bound = bound or 2 * self.n * (max(0, pm_max_degree(self.N)) + 1)
        P = D
        for k in range(2, bound + 1):
            P = compose_diff_ops(P, D, F)
            if not P:
                return k
        return None

    @property
    def delta_nilpotent(self):
        return self._delta_order is not None

    def twisted_scalar(self, f, x):
        """f(A_0) x for f in k((t^-1)) (LaurentSeries or Poly) and x in K_inf^n."""
        if isinstance(f, Poly):
            f = LaurentSeries.from_poly(f, ZVAR)
        f = f.with_var(ZVAR)
        out = None
        for j in range(self.n):
            if j and pm_is_zero(self.Npow[j]):
                break
            Djf = f.hasse(j)
            y = [Djf * a for a in x]
            if j:
                y = pm_apply(self.Npow[j], y)
            out = y if out is None else vadd(out, y)
        return out

    def from_coords(self, f):
        """T(f) = sum_i f_i(A_0) e_i for f in k((t^-1))^n."""
        fz = vwith_var(f, ZVAR)
        out = fz
        for j in range(1, self.n):
            if pm_is_zero(self.Npow[j]):
                break
            out = vadd(out, pm_apply(self.Npow[j], [a.hasse(j) for a in fz]))
        return out

    def _apply_delta(self, y):
        out = None
        for j in range(1, self.n):
            if pm_is_zero(self.Npow[j]):
                break
            term = pm_apply(self.Npow[j], [a.hasse(j) for a in y])
            out = term if out is None else vadd(out, term)
        return out

    def coords(self, x):
        """T^-1(x): twisted coordinates (variable t)."""
        if not self.delta_nilpotent:
            raise TwistedCoordinatesError(
                "twisted coordinates unavailable: Delta = sum N^j D_j is not nilpotent")
        out = x
        term = x
        for _ in range(1, self._delta_order):
            d = self._apply_delta(term)
            if d is None:
                break
            term = [-a for a in d]
            out = vadd(out, term)
        return vwith_var(out, TVAR)


# ------------------------------------------------------------------ lattices

def coord_degree(v):
    """max_i deg(v_i) = -val(v) (None for the zero vector)."""
    vals = [a.val for a in v if not a.is_zero()]
    if not vals:
        return None
    return -min(vals)


def leading_vector(v, deg):
    return [a.coeff(deg) for a in v]


def reduce_basis(F, vectors, n=None):
    """Reduce a generating set (twisted coordinates) of a k[t]-lattice.

    Vectors are processed by increasing degree; each is reduced by t^k-multiples
    of already-selected vectors until its leading coefficient vector is
    independent of theirs (then it is selected) or it vanishes to precision.
    The selected vectors have independent leading vectors, so they form a
    reduced basis of the k[t]-span of the input.
    """
    queue = [v for v in vectors if coord_degree(v) is not None]
    chosen = []
    while queue:
        queue.sort(key=coord_degree)
        v = queue.pop(0)
        while True:
            d = coord_degree(v)
            if d is None:
                break
            cands = [(s, ds) for s, ds in ((s, coord_degree(s)) for s in chosen) if ds <= d]
            coef = None
            if cands:
                A = np.array([leading_vector(s, ds) for s, ds in cands], dtype=np.int64).T
                try:
                    coef = solve(F, A, np.array(leading_vector(v, d), dtype=np.int64))
                except SingularMatrixError:
                    coef = None
            if coef is None:
                # higher-degree vectors may now be reducible by v: requeue them
                queue.extend(s for s in chosen if coord_degree(s) > d)
                chosen = [s for s in chosen if coord_degree(s) <= d] + [v]
                break
            for (s, ds), c in zip(cands, coef):
                if c:
                    v = vsub(v, [a.shift(d - ds).scale(int(c)) for a in s])
    if n is not None and len(chosen) > n:
        raise PrecisionError(f"reduction produced {len(chosen)} > {n} independent vectors")
    return chosen


class Lattice:
    """A k[t]-lattice in Lie(E)(K_inf) given by a basis of n vectors."""

    def __init__(self, space: TwistedSpace, basis, label=None):
        if len(basis) != space.n:
            raise ValueError(f"lattice basis must have {space.n} vectors")
        self.space = space
        self.basis = [list(b) for b in basis]
        self.label = label
        self._coords = None

    @classmethod
    def standard(cls, space):
        F = space.field
        n = space.n
        basis = [[LaurentSeries.one(F, ZVAR) if i == j else LaurentSeries.zero(F, var=ZVAR)
                  for i in range(n)] for j in range(n)]
        return cls(space, basis, "standard")

    @classmethod
    def from_coords(cls, space, coord_vectors, label=None):
        lat = cls(space, [space.from_coords(c) for c in coord_vectors], label)
        lat._coords = [list(c) for c in coord_vectors]
        return lat

    def coords(self):
        """Coordinate vectors (twisted, variable t) of the basis."""
        if self._coords is None:
            self._coords = [self.space.coords(b) for b in self.basis]
        return self._coords

    def coord_matrix(self):
        """n x n matrix whose columns are the coordinate vectors."""
        C = self.coords()
        n = self.space.n
        return [[C[j][i] for j in range(n)] for i in range(n)]

    def det(self, prec=None):
        return lm_det(self.coord_matrix(), prec)

    def check(self):
        d = self.det()
        if d.is_zero():
            raise PrecisionError("lattice basis is degenerate at working precision")
        return True

    @property
    def rank(self):
        return len(self.basis)

    def precision(self):
        return min(a.prec for v in self.coords() for a in v)


def lattice_index(L1: Lattice, L2: Lattice, default_prec=64):
    """[L1 : L2]: monic representative of det(M) where basis(L2) = basis(L1) M."""
    if L1.space.n != L2.space.n:
        raise ValueError("lattices live in different spaces")
    d1 = L1.det()
    d2 = L2.det()
    if d1.is_zero() or d2.is_zero():
        raise PrecisionError("non-commensurable inputs: coordinate matrix singular at precision")
    if not d1.exact:
        r = d2 / d1
    elif d1.c.size == 1:
        r = d2 * d1.inverse()
    else:
        P = d2.prec - d1.val if not d2.exact else default_prec
        r = d2.div(d1, P)
    return r.monic()


__all__ = ["TwistedSpace", "Lattice", "lattice_index", "reduce_basis", "compose_diff_ops",
           "TwistedCoordinatesError", "coord_degree", "leading_vector"]
