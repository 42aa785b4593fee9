"""Truncated Laurent series in one variable x^{-1} over F_q.

A series is stored by valuation: ``c[i]`` is the coefficient of
``x^-(v + i)`` and every coefficient with valuation below ``prec`` is known.
The error term is ``O(x^-prec)``.  ``prec == inf`` marks an exact Laurent
polynomial.  Precision is propagated pessimistically by every operation.
"""

from __future__ import annotations

import math

import numpy as np

from .fields import GF
from .poly import Poly

INF = math.inf


class PrecisionError(ArithmeticError):
    """Raised when a coefficient outside the known window is requested."""


def _strip(v, c, prec):
    nz = np.nonzero(c)[0]
    if nz.size == 0:
        if prec == INF:
            return 0, c[:0]
        return int(prec), c[:0]
    first = int(nz[0])
    if prec == INF:
        c = c[first:int(nz[-1]) + 1]
    else:
        c = c[first:]
    return v + first, c


class LaurentSeries:
    __slots__ = ("field", "v", "c", "prec", "var")

    def __init__(self, field: GF, v: int, coeffs, prec=INF, var="t"):
        c = np.asarray(coeffs, dtype=np.int64).reshape(-1)
        if prec != INF:
            prec = int(prec)
            n = prec - v
            if n < 0:
                v, c = prec, c[:0]
            elif c.size < n:
                c = np.concatenate([c, np.zeros(n - c.size, dtype=np.int64)])
            else:
                c = c[:n]
        v, c = _strip(int(v), c, prec)
        c.flags.writeable = False
        self.field, self.v, self.c, self.prec, self.var = field, v, c, prec, var

    # --- construction
    @classmethod
    def zero(cls, field, prec=INF, var="t"):
        return cls(field, 0 if prec == INF else prec, [], prec, var)

    @classmethod
    def one(cls, field, var="t"):
        return cls(field, 0, [1], INF, var)

    @classmethod
    def const(cls, field, a, var="t"):
        return cls(field, 0, [a], INF, var)

    @classmethod
    def monomial(cls, field, k, a=1, var="t"):
        """a * x^k (any integer k)."""
        return cls(field, -k, [a], INF, var)

    @classmethod
    def from_poly(cls, p: Poly, var="t"):
        if p.is_zero():
            return cls.zero(p.field, var=var)
        return cls(p.field, -p.degree, p.c[::-1], INF, var)

    @classmethod
    def from_dict(cls, field, d, var="t"):
        """Inverse of :meth:`to_dict`."""
        n = d.get("precision")
        coeffs = d["coefficients"]
        prec = INF if n is None else -d["lead_exponent"] + n
        return cls(field, -d["lead_exponent"], coeffs, prec, var)

    def to_dict(self):
        """``{lead_exponent, coefficients, precision}``; precision None if exact."""
        return {
            "lead_exponent": -self.v,
            "coefficients": [int(a) for a in self.c],
            "precision": None if self.prec == INF else int(self.prec - self.v),
        }

    # --- inspection
    @property
    def val(self):
        """Valuation; for an inexact zero this is the lower bound ``prec``."""
        if self.c.size == 0:
            return INF if self.prec == INF else self.prec
        return self.v

    @property
    def exact(self):
        return self.prec == INF

    def is_zero(self):
        return self.c.size == 0

    @property
    def lead(self):
        if self.c.size == 0:
            raise PrecisionError("leading coefficient of a zero series")
        return int(self.c[0])

    @property
    def degree(self):
        """Exponent of the leading term (= -val)."""
        return -self.val

    def coeff(self, k):
        """Coefficient of x^k."""
        w = -k
        if w >= self.prec:
            raise PrecisionError(f"coefficient of x^{k} beyond precision O(x^{-self.prec})")
        i = w - self.v
        if 0 <= i < self.c.size:
            return int(self.c[i])
        return 0

    def coeffs_between(self, vlo, vhi):
        """Coefficients with valuation in [vlo, vhi) as an array (vlo first)."""
        if vhi > self.prec:
            raise PrecisionError(f"need precision {vhi}, have {self.prec}")
        out = np.zeros(max(vhi - vlo, 0), dtype=np.int64)
        lo, hi = max(vlo, self.v), min(vhi, self.v + self.c.size)
        if hi > lo:
            out[lo - vlo:hi - vlo] = self.c[lo - self.v:hi - self.v]
        return out

    def part(self, vlo, vhi):
        """Exact Laurent polynomial made of the terms with valuation in [vlo, vhi)."""
        return LaurentSeries(self.field, vlo, self.coeffs_between(vlo, vhi), INF, self.var)

    def polynomial_part(self):
        """Terms x^k with k >= 0 as a :class:`Poly`."""
        if self.prec <= 0:
            raise PrecisionError("polynomial part not determined")
        if self.c.size == 0 or self.v > 0:
            return Poly.zero(self.field)
        arr = self.coeffs_between(self.v, 1)
        return Poly(self.field, arr[::-1])

    def relative_precision(self):
        if self.prec == INF:
            return INF
        return self.prec - self.val

    def __repr__(self):
        return f"LaurentSeries({self.to_str()})"

    def to_str(self, terms=8):
        parts = []
        x = self.var
        for i, a in enumerate(self.c[:terms]):
            a = int(a)
            if not a:
                continue
            k = -(self.v + i)
            mono = "" if k == 0 else (x if k == 1 else f"{x}^{k}")
            coef = "" if (a == 1 and mono) else str(a)
            parts.append(coef + ("*" if coef and mono else "") + mono)
        if self.c.size > terms:
            parts.append("...")
        if self.prec != INF:
            parts.append(f"O({x}^{-self.prec})")
        return " + ".join(parts) if parts else "0"

    # --- arithmetic
    def _other(self, o):
        if isinstance(o, LaurentSeries):
            return o
        if isinstance(o, Poly):
            return LaurentSeries.from_poly(o, self.var)
        if isinstance(o, (int, np.integer)):
            a = self.field.from_int(o)
            return LaurentSeries(self.field, 0, [a], INF, self.var)
        return NotImplemented

    def __add__(self, o):
        o = self._other(o)
        if o is NotImplemented:
            return NotImplemented
        F = self.field
        prec = min(self.prec, o.prec)
        lo = min(self.v if self.c.size else prec, o.v if o.c.size else prec)
        if lo == INF:
            return LaurentSeries.zero(F, var=self.var)
        hi = prec if prec != INF else max(self.v + self.c.size, o.v + o.c.size)
        lo = min(lo, hi)
        out = np.zeros(int(hi - lo), dtype=np.int64)
        for s in (self, o):
            a, b = max(s.v, lo), min(s.v + s.c.size, hi)
            if b > a:
                out[a - lo:b - lo] = F.add(out[a - lo:b - lo], s.c[a - s.v:b - s.v])
        return LaurentSeries(F, lo, out, prec, self.var)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries(self.field, self.v, self.field.neg(self.c), self.prec, self.var)

    def __sub__(self, o):
        o = self._other(o)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        o = self._other(o)
        if o is NotImplemented:
            return NotImplemented
        F = self.field
        va, vb = self.val, o.val
        prec = min(va + o.prec, vb + self.prec)
        if self.c.size == 0 or o.c.size == 0:
            if prec == INF:
                return LaurentSeries.zero(F, var=self.var)
            return LaurentSeries.zero(F, prec, self.var)
        v = self.v + o.v
        if prec != INF:
            n = int(prec - v)
            if n <= 0:
                return LaurentSeries.zero(F, prec, self.var)
            prod = F.conv(self.c[:n], o.c[:n])[:n]
        else:
            prod = F.conv(self.c, o.c)
        return LaurentSeries(F, v, prod, prec, self.var)

    __rmul__ = __mul__

    def scale(self, a):
        return LaurentSeries(self.field, self.v, self.field.mul(self.c, a), self.prec, self.var)

    def shift(self, k):
        """Multiply by x^k."""
        return LaurentSeries(self.field, self.v - k, self.c, self.prec - k, self.var)

    def truncate(self, prec):
        """Forget everything at valuation >= prec."""
        if prec >= self.prec:
            return self
        return LaurentSeries(self.field, self.v, self.c, prec, self.var)

    def inverse(self, prec=None):
        """Multiplicative inverse.

        For an exact operand the absolute precision ``prec`` of the result
        must be given; for an inexact one it is implied (and ``prec`` may only
        lower it).
        """
        F = self.field
        if self.c.size == 0:
            raise ZeroDivisionError("inverse of a series that is zero to its precision")
        rv = -self.v
        if self.prec == INF:
            if prec is None:
                if self.c.size == 1:
                    return LaurentSeries(F, rv, [F.sinv(int(self.c[0]))], INF, self.var)
                raise PrecisionError("inverse of a non-monomial exact series needs prec")
            target = prec
        else:
            target = self.prec - 2 * self.v
            if prec is not None:
                target = min(target, prec)
        n = int(target - rv)
        if n <= 0:
            return LaurentSeries.zero(F, target, self.var)
        b = _series_inverse(F, self.c, n)
        return LaurentSeries(F, rv, b, target, self.var)

    def __truediv__(self, o):
        o = self._other(o)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def div(self, o, prec):
        """Quotient truncated to absolute precision ``prec`` (``o`` may be exact)."""
        o = self._other(o)
        if self.c.size == 0 and self.prec == INF:
            return LaurentSeries.zero(self.field, var=self.var)
        if o.prec == INF:
            need = prec - self.val if self.c.size else prec
            inv = o.inverse(need)
        else:
            inv = o.inverse()
        return (self * inv).truncate(prec)

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        r = LaurentSeries.one(self.field, self.var)
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def frob(self, s=1, prec=None):
        """Apply the q^s-power map (additive, exact on F_q coefficients).

        ``prec`` optionally truncates the result (cheaper for large q^s).
        """
        if s == 0:
            return self if prec is None else self.truncate(prec)
        Q = self.field.q ** s
        new_prec = self.prec * Q if self.prec != INF else INF
        if prec is not None:
            new_prec = min(new_prec, prec)
        if self.c.size == 0:
            return LaurentSeries.zero(self.field, new_prec, self.var)
        v = self.v * Q
        m = self.c.size
        if new_prec != INF:
            # keep coefficients with v + Q i < new_prec
            m = min(m, max(0, -(-(int(new_prec) - v) // Q)))
            if m == 0:
                return LaurentSeries.zero(self.field, new_prec, self.var)
        out = np.zeros((m - 1) * Q + 1, dtype=np.int64)
        out[::Q] = self.c[:m]
        return LaurentSeries(self.field, v, out, new_prec, self.var)

    def hasse(self, j):
        """Hasse derivative D_j, extended continuously to Laurent series."""
        if j == 0:
            return self
        F = self.field
        if self.c.size == 0:
            return LaurentSeries.zero(F, self.prec + j, self.var)
        exps = -(self.v + np.arange(self.c.size))
        b = np.array([F.binom(int(m), j) for m in exps], dtype=np.int64)
        return LaurentSeries(F, self.v + j, F.mul(b, self.c), self.prec + j, self.var)

    def equals(self, o, prec=None):
        """Equality of all coefficients below ``prec`` (default: common precision)."""
        o = self._other(o)
        p = min(self.prec, o.prec)
        if prec is not None:
            if prec > p:
                raise PrecisionError(f"comparison at {prec} but operands known to {p}")
            p = prec
        d = (self - o).truncate(p) if p != INF else self - o
        return d.c.size == 0

    def __eq__(self, o):
        o = self._other(o)
        if o is NotImplemented:
            return NotImplemented
        return (self.prec == o.prec and self.v == o.v and np.array_equal(self.c, o.c)) or (
            self.c.size == 0 and o.c.size == 0 and self.prec == o.prec)

    __hash__ = None

    def with_var(self, var):
        """Same coefficients, different variable name."""
        return LaurentSeries(self.field, self.v, self.c, self.prec, var)

    def monic(self):
        """Divide by the leading coefficient."""
        return self.scale(self.field.sinv(self.lead))


def _series_inverse(F: GF, c, n):
    """First n coefficients of 1/(c[0] + c[1] u + ...), c[0] != 0."""
    c = np.asarray(c, dtype=np.int64)
    a0inv = F.sinv(int(c[0]))
    b = np.array([a0inv], dtype=np.int64)
    k = 1
    while k < n:
        k = min(2 * k, n)
        ab = F.conv(c[:k], b)[:k]
        ab = np.concatenate([ab, np.zeros(k - ab.size, dtype=np.int64)])
        # e = 1 - a b
        e = F.neg(ab)
        e[0] = F.sadd(int(e[0]), 1)
        corr = F.conv(b, e)[:k]
        corr = np.concatenate([corr, np.zeros(k - corr.size, dtype=np.int64)])
        b = F.add(np.concatenate([b, np.zeros(k - b.size, dtype=np.int64)]), corr)
    return b[:n]


def series_from_rational(num: Poly, den: Poly, prec, var="t"):
    """Expansion of num/den in x^-1 to absolute precision ``prec``."""
    a = LaurentSeries.from_poly(num, var)
    return a.div(LaurentSeries.from_poly(den, var), prec)
