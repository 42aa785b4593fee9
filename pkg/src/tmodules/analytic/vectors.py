"""Column vectors over K_inf = F_q((z^-1)) as lists of LaurentSeries."""

from __future__ import annotations

from ..algebra import INF, LaurentSeries, Poly

ZVAR = "z"
TVAR = "t"


def vzero(F, n, prec=INF, var=ZVAR):
    return [LaurentSeries.zero(F, prec, var) for _ in range(n)]


def unit_vector(F, n, i, var=ZVAR):
    v = vzero(F, n, var=var)
    v[i] = LaurentSeries.one(F, var)
    return v


def vadd(a, b):
    return [x + y for x, y in zip(a, b)]


def vsub(a, b):
    return [x - y for x, y in zip(a, b)]


def vneg(a):
    return [-x for x in a]


def vscale(a, c):
    """Multiply by a field constant c."""
    return [x.scale(c) for x in a]


def vtrunc(a, prec):
    return [x.truncate(prec) for x in a]


def vfrob(a, s, prec=None):
    return [x.frob(s, prec) for x in a]


def vval(a):
    return min(x.val for x in a)


def vprec(a):
    return min(x.prec for x in a)


def vis_zero(a):
    return all(x.is_zero() for x in a)


def vpart(a, vlo, vhi):
    """Terms with valuation in [vlo, vhi) (exact)."""
    return [x.part(vlo, vhi) for x in a]


def vpolypart(a):
    return [x.polynomial_part() for x in a]


def vfrom_polys(ps, var=ZVAR):
    return [LaurentSeries.from_poly(p, var) for p in ps]


def vwith_var(a, var):
    return [x.with_var(var) for x in a]


def pm_apply(M, v):
    """Matrix over F_q[z] (lists of Poly) times a Laurent vector."""
    n = len(M)
    F = v[0].field
    out = []
    for i in range(n):
        acc = None
        for j in range(len(v)):
            a = M[i][j]
            if a.is_zero():
                continue
            term = LaurentSeries.from_poly(a, v[j].var) * v[j]
            acc = term if acc is None else acc + term
        if acc is None:
            acc = LaurentSeries.zero(F, vprec(v) if vprec(v) != INF else INF, v[0].var)
        out.append(acc)
    return out


def lm_apply(M, v):
    """Laurent matrix times Laurent vector."""
    return [sum((M[i][j] * v[j] for j in range(1, len(v))), M[i][0] * v[0])
            for i in range(len(M))]


def lm_col(M, j):
    return [M[i][j] for i in range(len(M))]


def apply_phi(E, v, prec=None):
    """phi(t) v = sum_s A_s v^(q^s)."""
    out = pm_apply(E.A[0], v)
    for s in range(1, E.r + 1):
        out = vadd(out, pm_apply(E.A[s], vfrob(v, s, prec)))
    if prec is not None:
        out = vtrunc(out, prec)
    return out


def vcoeffs_between(a, vlo, vhi):
    """Flattened coefficient block: component-major, valuation vlo..vhi-1."""
    out = []
    for x in a:
        out.extend(int(c) for c in x.coeffs_between(vlo, vhi))
    return out


def vfrom_block(F, n, coeffs, vlo, vhi, var=ZVAR):
    """Inverse of :func:`vcoeffs_between` (exact Laurent polynomials)."""
    w = vhi - vlo
    return [LaurentSeries(F, vlo, coeffs[i * w:(i + 1) * w], INF, var) for i in range(n)]


def poly_vector_str(v, var=ZVAR):
    return [p.to_str(var) if isinstance(p, Poly) else p.to_str() for p in v]
