"""Exponential evaluation, the unit module exp^-1(E(R)) and the class module H(E/R).

Everything works in the splitting K_inf^n = heads + middle + ball, where
heads = k[z]^n, middle = span of z^-1 .. z^-(m0-1) and ball = {val >= m0}.
exp restricts to a bijection of the ball, so for w in heads + middle,
w + b lies in U = exp^-1(k[z]^n) iff middle(exp w) = 0 and
b = -exp_ball^-1(ball(exp w)).  Heads are spanned by the twisted monomials
A_0^j e_i, whose exponentials are phi(t)^j exp(e_i).
"""

from __future__ import annotations

import numpy as np

from ..algebra import INF, LaurentSeries, PrecisionError
from ..algebra.linalg import nullspace, rank as fq_rank, row_reduce, solve
from ..tmodule.finite import FiniteKtModule
from ..tmodule.model import TModule
from .expseries import (BallConstants, ExpSeries, InsufficientCoefficientsError, LogSeries,
                        ball_constants, exp_ball_inverse, exp_coeffs, exp_eps, exp_eval_small)
from .twisted import Lattice, TwistedSpace, coord_degree, lattice_index, reduce_basis
from .vectors import (ZVAR, apply_phi, unit_vector, vadd, vcoeffs_between, vfrom_block,
                      vneg, vprec, vscale, vsub, vtrunc, vval, vzero)


class StabilizationError(RuntimeError):
    pass


class HeadBoundError(RuntimeError):
    pass


# ------------------------------------------------------------------ evaluation

def split_vector(x, m0):
    """(heads + middle, ball) parts of x at threshold m0."""
    low = []
    for a in x:
        lo = min(a.val, 1) if not a.is_zero() else 1
        low.append(a.part(lo, m0) if lo < m0 else LaurentSeries.zero(a.field, var=a.var))
    return low, vsub(x, low)


def exp_eval(exp: ExpSeries, x, prec=None):
    """exp_E(x) for arbitrary x in K_inf^n.

    The polynomial part of x is written in twisted coordinates
    sum_j A_0^j c_j (c_j in k^n) and exponentiated as sum_j phi(t)^j exp(c_j)
    by Horner; the rest has val >= 1 and goes through the series directly.
    Precision drops by e per Horner step.
    """
    E = exp.E
    F = E.field
    n = E.n
    P = exp.W if prec is None else min(prec, exp.W)
    head = [LaurentSeries.from_poly(a.polynomial_part(), ZVAR) if a.val <= 0
            else LaurentSeries.zero(F, var=ZVAR) for a in x]
    rest = vsub(x, head)
    out = exp_eval_small(exp, rest, P) if vval(rest) < INF else vzero(F, n, P)
    if all(a.is_zero() for a in head):
        return out
    space = TwistedSpace(E)
    c = space.coords(head)
    top = max(a.degree for a in c if not a.is_zero())
    need = P + top * E.e
    if need > exp.W:
        raise InsufficientCoefficientsError(
            f"exp of a degree-{top} head to precision {P} needs W >= {need}, have {exp.W}")
    eps = [exp_eps(exp, i) for i in range(n)]
    acc = vzero(F, n, need)
    for j in range(top, -1, -1):
        if j < top:
            acc = apply_phi(E, acc, need)
        for i in range(n):
            cij = c[i].coeff(j)
            if cij:
                acc = vadd(acc, vscale(eps[i], cij))
    return vtrunc(vadd(out, acc), P)


def log_eval(log: LogSeries, x, prec=None):
    """log_E(x) = sum_s l_s x^(q^s) for x with val(x) >= 1 (series in the ball)."""
    W = log.exp.W if prec is None else min(prec, log.exp.W)
    if vval(x) < 1:
        raise InsufficientCoefficientsError("log series evaluation needs val(x) >= 1")
    from .vectors import lm_apply, vfrob
    out = vtrunc(x, W)
    for s in range(1, len(log)):
        ls = log[s]
        worst = min(a.val for row in ls for a in row)
        need = W + max(0, -worst)
        out = vadd(out, vtrunc(lm_apply(ls, vfrob(x, s, need)), W))
    return vtrunc(out, W)


# ------------------------------------------------------------------ generators

def head_images(exp: ExpSeries, B):
    """imgs[j][i] = exp(A_0^j e_i) = phi(t)^j exp(e_i) for 0 <= j <= B."""
    E = exp.E
    cur = [exp_eps(exp, i) for i in range(E.n)]
    imgs = [cur]
    for _ in range(B):
        cur = [apply_phi(E, v) for v in cur]
        imgs.append(cur)
    return imgs


def head_vectors(E: TModule, B):
    """heads[j][i] = A_0^j e_i as exact Laurent vectors."""
    from .vectors import pm_apply
    F = E.field
    cur = [unit_vector(F, E.n, i) for i in range(E.n)]
    out = [cur]
    for _ in range(B):
        cur = [pm_apply(E.A[0], v) for v in cur]
        out.append(cur)
    return out


def middle_monomials(F, n, m0):
    """z^-k e_i for 1 <= k < m0."""
    out = []
    for k in range(1, m0):
        for i in range(n):
            v = vzero(F, n)
            v[i] = LaurentSeries.monomial(F, -k, 1, ZVAR)
            out.append(v)
    return out


def _combine(F, vecs, coeffs, n):
    acc = vzero(F, n)
    for v, c in zip(vecs, coeffs):
        if c:
            acc = vadd(acc, vscale(v, int(c)))
    return acc


# ------------------------------------------------------------------ unit module

def default_working_precision(E, prec, B, m0):
    return prec + (B + 2) * (E.e + E.n) + 2 * m0 + 8


class UnitModule(Lattice):
    """The lattice U = exp^-1(E(R)) with the data used to compute it."""

    def __init__(self, space, basis, head_bound, constants: BallConstants, prec, checks):
        super().__init__(space, basis, "exp^-1(E(R))")
        self.head_bound = head_bound
        self.constants = constants
        self.prec = prec
        self.checks = checks

    def to_dict(self):
        return {"basis": [[a.to_dict() for a in v] for v in self.basis],
                "head_bound": self.head_bound, "precision": self.prec,
                "ball_constants": self.constants.to_dict(), "checks": dict(self.checks)}


def _unit_generators(exp: ExpSeries, m0, B):
    """u = w + b for an F_q-basis of {w in heads_B + middle : middle(exp w) = 0}."""
    E = exp.E
    F = E.field
    n = E.n
    heads = head_vectors(E, B)
    imgs = head_images(exp, B)
    gens = [v for row in heads for v in row] + middle_monomials(F, n, m0)
    gimg = [v for row in imgs for v in row] + [exp_eval_small(exp, v)
                                              for v in middle_monomials(F, n, m0)]
    if m0 > 1:
        M = np.array([vcoeffs_between(v, 1, m0) for v in gimg], dtype=np.int64).T
        K = nullspace(F, M)
    else:
        K = np.eye(len(gens), dtype=np.int64)
    out = []
    for row in K:
        w = _combine(F, gens, row, n)
        ew = _combine(F, gimg, row, n)
        ball = [a - a.part(min(a.val, m0), m0) if not a.is_zero() and a.val < m0 else a
                for a in ew]
        b = vneg(exp_ball_inverse(exp, ball, m0)) if vval(ball) < vprec(ball) else vzero(F, n, vprec(ball))
        out.append(vadd(w, b))
    return out


def exp_integrality_defect(exp: ExpSeries, u, prec):
    """Valuation of the non-polynomial part of exp(u) (>= prec means integral to prec)."""
    y = exp_eval(exp, u, prec)
    worst = INF
    for a in y:
        frac = a - a.part(min(a.val, 1), 1) if a.val < 1 and not a.is_zero() else a
        v = frac.val
        worst = min(worst, v)
    return worst


def _unit_basis(space, exp, m0, B):
    gens = _unit_generators(exp, m0, B)
    coords = [space.coords(u) for u in gens]
    red = reduce_basis(space.field, coords, space.n)
    return red


def unit_module(E: TModule, B=None, prec=12, exp: ExpSeries | None = None, max_B=40):
    """U = exp_E^-1(E(R)) as a k[t]-lattice, basis known to t^-prec.

    With B=None the head bound grows until the reduced generating set has
    rank n and the lattice index is unchanged at B + 2.
    """
    space = TwistedSpace(E)
    auto = B is None
    B = 0 if auto else B
    while True:
        W = default_working_precision(E, prec, B + 2, 1)
        if exp is None or exp.W < W:
            exp = exp_coeffs(E, W)
        bc = ball_constants(exp)
        m0 = bc.m0
        if exp.W < default_working_precision(E, prec, B + 2, m0):
            exp = exp_coeffs(E, default_working_precision(E, prec, B + 2, m0))
            bc = ball_constants(exp)
            m0 = bc.m0
        red = _unit_basis(space, exp, m0, B)
        if len(red) == E.n:
            red2 = _unit_basis(space, exp, m0, B + 2)
            if len(red2) == E.n:
                L1 = Lattice.from_coords(space, red)
                L2 = Lattice.from_coords(space, red2)
                rel = lattice_index(L1, L2)
                stable = rel.equals(LaurentSeries.one(E.field, rel.var), min(rel.prec, prec))
                if stable:
                    break
        if not auto or B >= max_B:
            raise HeadBoundError(
                f"head bound too small: B={B} gives rank {len(red)} < {E.n} or unstable index")
        B += 1
    basis = [space.from_coords(c) for c in red]
    checks = {"rank": len(red), "stable_at_B_plus_2": True}
    defects = [exp_integrality_defect(exp, u, prec) for u in basis]
    checks["exp_integral"] = all(d >= prec for d in defects)
    U = UnitModule(space, basis, B, bc, prec, checks)
    U._coords = [list(c) for c in red]
    U.exp = exp
    return U


def regulator(U: Lattice):
    """[Lie(E)(R) : U] = monic det of the twisted coordinate matrix of U."""
    return lattice_index(Lattice.standard(U.space), U)


# ------------------------------------------------------------------ class module

class ClassModule(FiniteKtModule):
    def __init__(self, field, T, constants, J, stable_window, image_rank, middle_dim):
        super().__init__(field, T)
        self.constants = constants
        self.J = J
        self.stable_window = stable_window
        self.image_rank = image_rank
        self.middle_dim = middle_dim

    def to_dict(self):
        return {"order": [int(a) for a in self.order().c], "dimension": self.dim,
                "invariant_factors": [[int(a) for a in f.c] for f in self.invariant_factors()],
                "J": self.J, "stabilization_window": self.stable_window,
                "middle_dim": self.middle_dim, "image_rank": self.image_rank,
                "ball_constants": self.constants.to_dict()}


def class_module(E: TModule, window=None, max_J=None, exp: ExpSeries | None = None):
    """H(E/R) = middle / (image of middle(exp(.)) on heads and middle).

    The head degree J grows until the image rank has not changed for
    ``window`` consecutive steps (or the image is everything).
    """
    F = E.field
    n = E.n
    exp = exp or exp_coeffs(E, 24)
    bc = ball_constants(exp)
    m0 = bc.m0
    dim = n * (m0 - 1)
    if dim == 0:
        return ClassModule(F, np.zeros((0, 0), dtype=np.int64), bc, 0, 0, 0, 0)
    window = window or max(4, n * m0)
    if max_J is None:
        max_J = 8 * window + 4 * dim
    W = m0 + (max_J + 1) * E.e + 2
    if exp.W < W:
        exp = exp_coeffs(E, W)
        bc2 = ball_constants(exp)
        if bc2.m0 != m0:
            return class_module(E, window, max_J, exp)
    rows = [vcoeffs_between(exp_eval_small(exp, v), 1, m0) for v in middle_monomials(F, n, m0)]
    cur = [exp_eps(exp, i) for i in range(n)]
    last_rank = -1
    since = 0
    J = -1
    for J in range(max_J + 1):
        if J:
            cur = [apply_phi(E, v) for v in cur]
        rows.extend(vcoeffs_between(v, 1, m0) for v in cur)
        rk = fq_rank(F, np.array(rows, dtype=np.int64))
        if rk == last_rank:
            since += 1
        else:
            since = 0
            last_rank = rk
        if rk == dim or since >= window:
            break
    else:
        raise StabilizationError(
            f"stabilization not reached up to J={max_J}; use the shtuka method")
    if rk < dim and since < window:
        raise StabilizationError("stabilization not reached; use the shtuka method")
    R, piv = row_reduce(F, np.array(rows, dtype=np.int64))
    img = R[:len(piv)]
    comp = [c for c in range(dim) if c not in piv]
    k = len(comp)
    basis = np.vstack([img, np.eye(dim, dtype=np.int64)[comp]]) if k else img
    T = np.zeros((k, k), dtype=np.int64)
    for a, c in enumerate(comp):
        y = vfrom_block(F, n, np.eye(dim, dtype=np.int64)[c], 1, m0)
        ty = apply_phi(E, y)
        coeffs = solve(F, basis.T, np.array(vcoeffs_between(ty, 1, m0), dtype=np.int64))
        T[:, a] = coeffs[len(piv):]
    return ClassModule(F, T, bc, J, window, len(piv), dim)


__all__ = ["exp_eval", "log_eval", "unit_module", "class_module", "regulator", "UnitModule",
           "ClassModule", "StabilizationError", "HeadBoundError", "head_images",
           "middle_monomials", "exp_integrality_defect"]
