"""The exponential and logarithm of an abelian t-module.

exp_E(X) = sum_s e_s X^(q^s) is determined by e_0 = I and

    e_i A_0^(q^i) - A_0 e_i = sum_{s=1}^{min(r,i)} A_s e_{i-s}^(q^s).

Writing A_0 = z I + N this reads (z^Q - z) e_i = C_i + N e_i - e_i N^(Q) with
Q = q^i; the operator X -> N X - X N^(Q) is nilpotent, so the solution is the
finite sum e_i = sum_k (z^Q - z)^-(k+1) (N . - . N^(Q))^k C_i.
"""

from __future__ import annotations

from ..algebra import INF, LaurentSeries, PrecisionError, Poly
from ..algebra.linalg import lm_add, lm_sub, lm_truncate, pm_frob, pm_max_degree
from ..tmodule.model import TModule
from .vectors import (ZVAR, lm_apply, lm_col, vadd, vfrob, vprec, vsub, vtrunc, vval,
                      vzero)


class InsufficientCoefficientsError(PrecisionError):
    pass


def _lm_zero(F, n, prec=INF):
    return [[LaurentSeries.zero(F, prec, ZVAR) for _ in range(n)] for _ in range(n)]


def _lm_identity(F, n):
    return [[LaurentSeries.one(F, ZVAR) if i == j else LaurentSeries.zero(F, var=ZVAR)
             for j in range(n)] for i in range(n)]


def _pm_to_lm(A):
    return [[LaurentSeries.from_poly(a, ZVAR) for a in row] for row in A]


def _lm_mul(A, B, prec=None):
    n, m, p = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            acc = None
            for k in range(m):
                if A[i][k].is_zero() and A[i][k].exact:
                    continue
                if B[k][j].is_zero() and B[k][j].exact:
                    continue
                term = A[i][k] * B[k][j]
                acc = term if acc is None else acc + term
            if acc is None:
                acc = LaurentSeries.zero(A[0][0].field, var=ZVAR)
            if prec is not None:
                acc = acc.truncate(prec)
            row.append(acc)
        out.append(row)
    return out


def _lm_is_zero(A):
    return all(a.is_zero() for row in A for a in row)


def _lm_val(A):
    return min(a.val for row in A for a in row)


def _lm_prec(A):
    return min(a.prec for row in A for a in row)


class ExpSeries:
    """Coefficients e_0 = I, e_1, ... of exp_E, each known mod z^-W.

    ``tail_certified`` is True when the computed range provably contains every
    coefficient that is nonzero mod z^-W (constant nilpotent part, r
    consecutive coefficients vanishing mod z^-W, and (q - 1) W >= deg A_s).
    """

    def __init__(self, E: TModule, W, coeffs, tail_certified, tail_window):
        self.E = E
        self.W = W
        self.coeffs = coeffs
        self.tail_certified = tail_certified
        self.tail_window = tail_window

    @property
    def s_max(self):
        return len(self.coeffs) - 1

    def vals(self):
        return [_lm_val(e) for e in self.coeffs]

    def precisions(self):
        return [_lm_prec(e) for e in self.coeffs]

    def __getitem__(self, s):
        if s < len(self.coeffs):
            return self.coeffs[s]
        if self.tail_certified:
            return _lm_zero(self.E.field, self.E.n, self.W)
        raise InsufficientCoefficientsError(f"e_{s} beyond certified range {self.s_max}")

    def __len__(self):
        return len(self.coeffs)

    def residual(self, i):
        """e_i A_0^(q^i) - A_0 e_i - sum_s A_s e_{i-s}^(q^s), truncated to the known precision."""
        E = self.E
        A0Q = _pm_to_lm(pm_frob(E.A[0], i))
        A0 = _pm_to_lm(E.A[0])
        lhs = lm_sub(_lm_mul(self.coeffs[i], A0Q), _lm_mul(A0, self.coeffs[i]))
        rhs = _lm_zero(E.field, E.n)
        for s in range(1, min(E.r, i) + 1):
            rhs = lm_add(rhs, _lm_mul(_pm_to_lm(E.A[s]),
                                      [[a.frob(s) for a in row] for row in self.coeffs[i - s]]))
        return lm_sub(lhs, rhs)


def exp_coeffs(E: TModule, W=30, s_max=None, window=None) -> ExpSeries:
    """Compute e_s mod z^-W until the tail is certified (or up to ``s_max``)."""
    F = E.field
    n = E.n
    q = E.q
    const_N = E.nilpotent_is_constant()
    degN = max(0, pm_max_degree(E.N))
    maxdeg = max(0, E.max_frobenius_degree())
    window = window or (max(E.r, 1) if const_N else 2 * n + E.r)
    coeffs = [_lm_identity(F, n)]
    zeros_run = 0
    certified = False
    i = 0
    Nlm = _pm_to_lm(E.N)
    while True:
        i += 1
        if s_max is not None and i > s_max:
            break
        Q = q ** i
        slack = (2 * n - 2) * (Q + 1) * degN
        Wp = W + slack
        C = _lm_zero(F, n)
        for s in range(1, min(E.r, i) + 1):
            prev = [[a.frob(s, Wp + maxdeg) for a in row] for row in coeffs[i - s]]
            C = lm_add(C, _lm_mul(_pm_to_lm(E.A[s]), prev, Wp))
        C = lm_truncate(C, Wp)
        denom = LaurentSeries.from_poly(Poly.monomial(F, Q) - Poly.x(F), ZVAR)
        NQ = _pm_to_lm(pm_frob(E.N, i))
        X = _lm_zero(F, n)
        term = C
        for _ in range(2 * n - 1):
            term = [[a.div(denom, Wp) for a in row] for row in term]
            X = lm_add(X, term)
            if degN == 0 and _lm_is_zero(Nlm):
                break
            term = lm_truncate(lm_sub(_lm_mul(Nlm, term), _lm_mul(term, NQ)), Wp)
            if _lm_is_zero(term) and _lm_prec(term) >= Wp:
                break
        X = lm_truncate(X, W)
        if _lm_prec(X) < W:
            raise InsufficientCoefficientsError(
                f"precision loss computing e_{i}: have {_lm_prec(X)}, need {W}")
        coeffs.append(X)
        zeros_run = zeros_run + 1 if _lm_is_zero(X) else 0
        if zeros_run >= window and (q - 1) * W >= maxdeg:
            certified = const_N
            coeffs = coeffs[:len(coeffs) - zeros_run] or coeffs[:1]
            break
        if s_max is None and i > 64:
            raise InsufficientCoefficientsError("exponential coefficients failed to decay")
    return ExpSeries(E, W, coeffs, certified, window)


class LogSeries:
    def __init__(self, exp: ExpSeries, coeffs):
        self.exp = exp
        self.coeffs = coeffs

    def __getitem__(self, s):
        return self.coeffs[s]

    def __len__(self):
        return len(self.coeffs)


def log_coeffs(E: TModule, W=30, s_max=None, exp: ExpSeries | None = None) -> LogSeries:
    """l_0 = I, l_i = -sum_{k<i} l_k e_{i-k}^(q^k) (compositional inverse of exp)."""
    exp = exp or exp_coeffs(E, W)
    F = E.field
    n = E.n
    W = exp.W
    top = s_max if s_max is not None else exp.s_max
    ls = [_lm_identity(F, n)]
    for i in range(1, top + 1):
        acc = _lm_zero(F, n)
        for k in range(i):
            ek = exp[i - k]
            acc = lm_add(acc, _lm_mul(ls[k], [[a.frob(k, W) for a in row] for row in ek], W))
        ls.append([[(-a).truncate(W) for a in row] for row in acc])
    return LogSeries(exp, ls)


def compose_exp_log(exp: ExpSeries, log: LogSeries, order):
    """Coefficients of exp(log(X)) up to X^(q^order); identity means [I, 0, 0, ...]."""
    E = exp.E
    if len(log) <= order:
        raise InsufficientCoefficientsError(
            f"log known to order {len(log) - 1}, composition asked for {order}")
    out = []
    for i in range(order + 1):
        acc = _lm_zero(E.field, E.n)
        for k in range(i + 1):
            acc = lm_add(acc, _lm_mul(exp[k], [[a.frob(k, exp.W) for a in row]
                                               for row in log[i - k]], exp.W))
        out.append(acc)
    return out


# ------------------------------------------------------------------ evaluation

class BallConstants:
    """e, c >= sup_s(-val e_s) + e, m0 = c - e + 1."""

    def __init__(self, e, c, tail_certified):
        self.e = e
        self.c = c
        self.m0 = c - e + 1
        self.tail_certified = tail_certified

    def to_dict(self):
        return {"e": self.e, "c": self.c, "m0": self.m0,
                "heuristic_tail": not self.tail_certified}

    def __repr__(self):
        return f"BallConstants(e={self.e}, c={self.c}, m0={self.m0})"


def ball_constants(exp: ExpSeries) -> BallConstants:
    worst = 0
    for e in exp.coeffs:
        v = _lm_val(e)
        if v < exp.W:
            worst = max(worst, -v)
    e = exp.E.e
    return BallConstants(e, int(worst) + e, exp.tail_certified)


def exp_eval_small(exp: ExpSeries, x, prec=None):
    """exp(x) = sum_s e_s x^(q^s) for val(x) >= 0, known to min(prec, W)."""
    W = exp.W if prec is None else min(prec, exp.W)
    v = vval(x)
    if v < 0:
        raise InsufficientCoefficientsError("direct exponential series needs val(x) >= 0")
    out = vtrunc(x, W)
    for s in range(1, len(exp.coeffs)):
        es = exp.coeffs[s]
        need = W + max(0, -_lm_val(es))
        out = vadd(out, vtrunc(lm_apply(es, vfrob(x, s, need)), W))
    return vtrunc(out, W)


def exp_ball_inverse(exp: ExpSeries, y, m0, prec=None):
    """The unique b with val(b) >= m0 and exp(b) = y, for val(y) >= m0.

    Fixed-point iteration b <- y - (exp(b) - b); each step gains precision
    because val(exp(d) - d) > val(d) on the ball.
    """
    if vval(y) < m0:
        raise ValueError("exp_ball_inverse needs val(y) >= m0")
    P = min(vprec(y), exp.W) if prec is None else min(prec, vprec(y), exp.W)
    y = vtrunc(y, P)
    b = y
    for _ in range(4 * P + 8):
        nb = vsub(y, vsub(exp_eval_small(exp, b, P), b))
        nb = vtrunc(nb, P)
        if all(a.equals(c) for a, c in zip(nb, b)):
            return nb
        b = nb
    raise InsufficientCoefficientsError("ball inverse iteration did not converge")


def exp_eps(exp: ExpSeries, i):
    """exp(e_i) = sum_s (column i of e_s), e_i the i-th standard basis vector."""
    F = exp.E.field
    out = vzero(F, exp.E.n, exp.W)
    for es in exp.coeffs:
        out = vadd(out, lm_col(es, i))
    return vtrunc(out, exp.W)


def functional_equation_residual(exp: ExpSeries):
    """max over certified s of the precision-limited residual (all should be zero)."""
    return [exp.residual(i) for i in range(1, len(exp.coeffs))]


__all__ = ["ExpSeries", "LogSeries", "BallConstants", "exp_coeffs", "log_coeffs",
           "ball_constants", "exp_eval_small", "exp_ball_inverse", "exp_eps",
           "compose_exp_log", "InsufficientCoefficientsError", "functional_equation_residual"]
