"""The pencil t J - Phi : H^1(O(-d))^n[t] -> H^1(O(e-d))^n[t] and its Ext groups.

Since H^0 of both sheaves vanishes for d > e, the complex
O(-d)^n[t] -> O(e-d)^n[t] (map t - sum_s A_s tau^s) has
Ext^1 = ker P(t) and Ext^2 = coker P(t) on H^1.
"""

from __future__ import annotations

import math

import numpy as np

from ..algebra import Poly, PrecisionError
from ..algebra.smith import SmithDecomposition, check_smith, smith_normal_form
from ..analytic.expseries import ball_constants, exp_ball_inverse, exp_coeffs
from ..analytic.twisted import Lattice, TwistedSpace, reduce_basis
from ..analytic.units import exp_integrality_defect
from ..analytic.vectors import apply_phi, pm_apply, vadd, vsub, vzero
from ..tmodule.finite import FiniteKtModule
from ..tmodule.model import TModule
from .cech import CechH1


class InadmissibleError(ValueError):
    pass


class ShtukaUnitError(ValueError):
    pass


# ------------------------------------------------------------------ admissibility

def admissible_d(E: TModule, constants=None):
    """Smallest twist used by default.

    max(ceil(deg(A_1..A_r)/(q-1)), c - e + 1, e + 2) + 1, raised to c + 1 when e > 1.
    """
    if constants is None:
        constants = ball_constants(exp_coeffs(E, 24))
    e, c = E.e, constants.c
    deg = max(0, E.max_frobenius_degree())
    d = max(math.ceil(deg / (E.q - 1)), c - e + 1, e + 2) + 1
    if e > 1:
        d = max(d, c + 1)
    return d


def is_admissible(E: TModule, d, constants=None):
    """d >= e + 2, d - e >= m0 and A_s maps O(-d) into O(e - d) after tau^s."""
    if d < E.e + 2:
        return False
    if constants is None:
        constants = ball_constants(exp_coeffs(E, 24))
    if d - E.e < constants.m0:
        return False
    for s in range(1, E.r + 1):
        deg = max((a.degree for row in E.A[s] for a in row), default=-1)
        if deg > (E.q ** s - 1) * d + E.e:
            return False
    return True


# ------------------------------------------------------------------ pencil

class ShtukaPencil:
    """P(t) = t J - Phi over k[t] (target rows, source columns)."""

    def __init__(self, E, d, J, Phi, source, target):
        self.E = E
        self.d = d
        self.e = E.e
        self.J = J
        self.Phi = Phi
        self.source = source
        self.target = target
        F = E.field
        t = Poly.x(F)
        rows, cols = J.shape
        self.P = [[t.scale(int(J[i, j])) - Poly.const(F, int(Phi[i, j])) if J[i, j] or Phi[i, j]
                   else Poly.zero(F) for j in range(cols)] for i in range(rows)]

    @property
    def shape(self):
        return self.J.shape

    def to_dict(self):
        E = self.E
        return {"d": self.d, "e": self.e, "n": E.n, "q": E.q,
                "rows": self.shape[0], "cols": self.shape[1],
                "matrix": [[[int(c) for c in a.c] for a in row] for row in self.P]}

    def source_vector(self, coords):
        """Laurent representative in K_inf^n of a source coordinate vector."""
        return self.source.lift(coords, self.E.n)


def build_pencil(E: TModule, d=None, check=True) -> ShtukaPencil:
    constants = ball_constants(exp_coeffs(E, 24))
    if d is None:
        d = admissible_d(E, constants)
    if check and not is_admissible(E, d, constants):
        raise InadmissibleError(f"d={d} is not admissible for this module")
    F = E.field
    n = E.n
    src = CechH1(-d, F)
    tgt = CechH1(E.e - d, F)
    ncols = n * src.dim
    nrows = n * tgt.dim
    J = np.zeros((nrows, ncols), dtype=np.int64)
    Phi = np.zeros((nrows, ncols), dtype=np.int64)
    for col in range(ncols):
        basis = np.zeros(ncols, dtype=np.int64)
        basis[col] = 1
        x = src.lift(basis, n)
        J[:, col] = tgt.reduce_vector(x)
        Phi[:, col] = tgt.reduce_vector(apply_phi(E, x))
    return ShtukaPencil(E, d, J, Phi, src, tgt)


# ------------------------------------------------------------------ Ext groups

class ExtResult:
    def __init__(self, pencil, snf: SmithDecomposition):
        self.pencil = pencil
        self.snf = snf
        self.ext1 = snf.kernel_basis()
        self.ext2_factors = snf.nontrivial_factors()
        F = pencil.E.field
        order = Poly.one(F)
        for f in self.ext2_factors:
            order = order * f
        self.ext2_order = order
        self.e_is_one = pencil.E.e == 1
        self.ext1_rank = len(self.ext1)
        self.k_rank = self.ext1_rank - pencil.E.n

    @property
    def ext2_torsion(self):
        return self.snf.cokernel_free_rank() == 0

    def ext2_module(self):
        """Ext^2 as a finite k[t]-module (block companion form)."""
        from ..algebra.linalg import companion
        F = self.pencil.E.field
        blocks = [companion(F, f) for f in self.ext2_factors]
        D = sum(b.shape[0] for b in blocks)
        T = np.zeros((D, D), dtype=np.int64)
        o = 0
        for b in blocks:
            k = b.shape[0]
            T[o:o + k, o:o + k] = b
            o += k
        return FiniteKtModule(F, T)

    def to_dict(self):
        return {"d": self.pencil.d, "e_is_one": self.e_is_one,
                "ext1_rank": self.ext1_rank, "k_rank": self.k_rank,
                "ext1_basis": [[[int(c) for c in a.c] for a in v] for v in self.ext1],
                "ext2_invariant_factors": [[int(c) for c in f.c] for f in self.ext2_factors],
                "ext2_order": [int(c) for c in self.ext2_order.c],
                "ext2_torsion": self.ext2_torsion}


def ext_groups(pencil: ShtukaPencil, verify=False) -> ExtResult:
    S = smith_normal_form(pencil.P)
    if verify and not check_smith(pencil.P, S):
        raise ArithmeticError("Smith decomposition failed verification")
    return ExtResult(pencil, S)


# ------------------------------------------------------------------ units for e = 1

def _ext1_element_terms(pencil, v):
    """Split sum_s v_s t^s (v in ker P) into its t-coefficients in K_inf^n."""
    n = pencil.E.n
    deg = max((a.degree for a in v), default=-1)
    out = []
    for s in range(deg + 1):
        coords = np.array([a[s] for a in v], dtype=np.int64)
        out.append(pencil.source.lift(coords, n))
    return out


def realize_unit(pencil, v, exp):
    """The unit attached to an Ext^1 element v = sum_s v_s t^s.

    With c_s = v_{s-1} - phi(v_s) split as r_s (polynomial) + b_s (val >= d - e),
    u = sum_s A_0^s exp_ball^-1(b_s) satisfies exp(u) = -sum_s phi^s(r_s).
    """
    E = pencil.E
    F = E.field
    n = E.n
    m0 = ball_constants(exp).m0
    lo = pencil.d - E.e
    vs = _ext1_element_terms(pencil, v)
    S = len(vs)
    u = vzero(F, n, exp.W)
    prev = vzero(F, n)
    for s in range(S + 1):
        cur = vs[s] if s < S else vzero(F, n)
        c = vsub(prev, apply_phi(E, cur))
        mid = [a.coeffs_between(1, lo) for a in c]
        if any(np.any(m) for m in mid):
            raise ArithmeticError("Ext^1 element is not a cycle")
        b = [a - a.part(min(a.val, 1), 1) if a.val < 1 and not a.is_zero() else a for a in c]
        b = [a.truncate(exp.W) for a in b]
        beta = exp_ball_inverse(exp, b, m0) if not all(a.is_zero() for a in b) \
            else vzero(F, n, exp.W)
        for _ in range(s):
            beta = pm_apply(E.A[0], beta)
        u = vadd(u, beta)
        prev = cur
    return u


def units_via_shtuka(E: TModule, d=None, prec=12, exp=None):
    """Basis of exp^-1(E(R)) from Ext^1 (requires e = 1)."""
    if E.e != 1:
        raise ShtukaUnitError("shtuka unit method requires e=1; use analytic method")
    pencil = build_pencil(E, d)
    res = ext_groups(pencil)
    if res.ext1_rank != E.n:
        raise ArithmeticError(f"Ext^1 has rank {res.ext1_rank}, expected {E.n}")
    maxdeg = max(a.degree for v in res.ext1 for a in v)
    W = prec + (maxdeg + 2) * (E.e + E.n) + 2 * pencil.d + 8
    if exp is None or exp.W < W:
        exp = exp_coeffs(E, W)
    space = TwistedSpace(E)
    us = [realize_unit(pencil, v, exp) for v in res.ext1]
    coords = reduce_basis(E.field, [space.coords(u) for u in us], E.n)
    if len(coords) != E.n:
        raise PrecisionError("shtuka units lost rank at working precision")
    L = Lattice.from_coords(space, coords, "shtuka exp^-1(E(R))")
    L.exp = exp
    L.pencil = pencil
    L.ext = res
    L.checks = {"exp_integral": all(exp_integrality_defect(exp, u, prec) >= prec
                                    for u in L.basis)}
    return L


def finite_module_from_theta(F, theta):
    """coker(t - theta) with its Smith certificate: returns (FiniteKtModule, factors, snf)."""
    theta = np.asarray(theta, dtype=np.int64)
    M = FiniteKtModule(F, theta)
    m = theta.shape[0]
    if m == 0:
        return M, [], None
    t = Poly.x(F)
    P = [[(t if i == j else Poly.zero(F)) - Poly.const(F, int(theta[i, j])) for j in range(m)]
         for i in range(m)]
    S = smith_normal_form(P)
    return M, S.nontrivial_factors(), S


__all__ = ["CechH1", "ShtukaPencil", "ExtResult", "admissible_d", "is_admissible",
           "build_pencil", "ext_groups", "units_via_shtuka", "realize_unit",
           "finite_module_from_theta", "InadmissibleError", "ShtukaUnitError"]
