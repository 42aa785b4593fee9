"""Dense univariate polynomials over a finite field."""

from __future__ import annotations

import numpy as np

from .fields import GF


def _trim(c):
    nz = np.nonzero(c)[0]
    if nz.size == 0:
        return c[:0]
    return c[:nz[-1] + 1]


class Poly:
    """Immutable polynomial over ``field``; coefficients lowest degree first.

    The zero polynomial has ``degree == -1`` (use :data:`Poly.is_zero` rather
    than comparing degrees when that matters).
    """

    __slots__ = ("field", "c", "_hash")

    def __init__(self, field: GF, coeffs=()):
        c = np.array(coeffs, dtype=np.int64).reshape(-1)
        if c.size and (c.min() < 0 or c.max() >= field.q):
            raise ValueError(f"coefficients out of range for {field}")
        self.field = field
        self.c = _trim(c)
        self.c.flags.writeable = False
        self._hash = None

    @classmethod
    def _raw(cls, field, c):
        obj = cls.__new__(cls)
        obj.field = field
        obj.c = _trim(np.asarray(c, dtype=np.int64))
        obj.c.flags.writeable = False
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, field):
        return cls._raw(field, np.zeros(0, dtype=np.int64))

    @classmethod
    def one(cls, field):
        return cls.const(field, 1)

    @classmethod
    def const(cls, field, a):
        return cls._raw(field, np.array([a], dtype=np.int64))

    @classmethod
    def monomial(cls, field, k, a=1):
        c = np.zeros(k + 1, dtype=np.int64)
        c[k] = a
        return cls._raw(field, c)

    @classmethod
    def x(cls, field):
        return cls.monomial(field, 1)

    @classmethod
    def from_int(cls, field, code, length):
        """Decode base-q digits (lowest first) into a polynomial."""
        c = np.zeros(length, dtype=np.int64)
        for i in range(length):
            code, c[i] = divmod(code, field.q)
        return cls._raw(field, c)

    # --- basic properties
    @property
    def degree(self):
        return self.c.size - 1

    def is_zero(self):
        return self.c.size == 0

    def is_one(self):
        return self.c.size == 1 and self.c[0] == 1

    @property
    def lead(self):
        return int(self.c[-1]) if self.c.size else 0

    def __getitem__(self, k):
        return int(self.c[k]) if 0 <= k < self.c.size else 0

    def coeffs(self):
        return [int(v) for v in self.c]

    def __len__(self):
        return self.c.size

    def __eq__(self, other):
        if isinstance(other, int):
            other = Poly.const(self.field, other % self.field.p) if other else Poly.zero(self.field)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.field == other.field and np.array_equal(self.c, other.c)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.q, tuple(self.c.tolist())))
        return self._hash

    def __repr__(self):
        return f"Poly({self.coeffs()})"

    def __str__(self):
        return self.to_str()

    def to_str(self, var="t"):
        if self.is_zero():
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            a = int(self.c[k])
            if a == 0:
                continue
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if not mono:
                terms.append(str(a))
            elif a == 1:
                terms.append(mono)
            else:
                terms.append(f"{a}*{mono}")
        return " + ".join(terms)

    # --- arithmetic
    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, np.integer)):
            return Poly.const(self.field, self.field.from_int(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.c, other.c
        if a.size < b.size:
            a, b = b, a
        out = a.copy()
        out[:b.size] = self.field.add(out[:b.size], b)
        return Poly._raw(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.field, self.field.neg(self.c))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return self.scale(self.field.from_int(other))
        if not isinstance(other, Poly):
            return NotImplemented
        return Poly._raw(self.field, self.field.conv(self.c, other.c))

    __rmul__ = __mul__

    def scale(self, a):
        """Multiply by the field element ``a``."""
        return Poly._raw(self.field, self.field.mul(self.c, a))

    def shift(self, k):
        """Multiply by t^k (k >= 0)."""
        if self.is_zero():
            return self
        return Poly._raw(self.field, np.concatenate([np.zeros(k, dtype=np.int64), self.c]))

    def __pow__(self, k):
        r = Poly.one(self.field)
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        a = self.c.copy()
        db = other.degree
        if a.size - 1 < db:
            return Poly.zero(F), self
        inv_lead = F.sinv(other.lead)
        qc = np.zeros(a.size - db, dtype=np.int64)
        b = other.c
        for k in range(a.size - 1 - db, -1, -1):
            coef = int(a[k + db])
            if coef == 0:
                continue
            m = F.smul(coef, inv_lead)
            qc[k] = m
            a[k:k + db + 1] = F.sub(a[k:k + db + 1], F.mul(b, m))
        return Poly._raw(F, qc), Poly._raw(F, a[:db] if db > 0 else a[:0])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self):
        if self.is_zero():
            return self
        return self.scale(self.field.sinv(self.lead))

    def is_monic(self):
        return self.lead == 1

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def xgcd(self, other):
        """Return (g, s, u) with g = s*self + u*other, g monic."""
        F = self.field
        r0, r1 = self, other
        s0, s1 = Poly.one(F), Poly.zero(F)
        u0, u1 = Poly.zero(F), Poly.one(F)
        while not r1.is_zero():
            qq, r = r0.divmod(r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - qq * s1
            u0, u1 = u1, u0 - qq * u1
        if r0.is_zero():
            return r0, s0, u0
        inv = F.sinv(r0.lead)
        return r0.scale(inv), s0.scale(inv), u0.scale(inv)

    def powmod(self, k, m):
        r = Poly.one(self.field) % m
        b = self % m
        while k:
            if k & 1:
                r = (r * b) % m
            b = (b * b) % m
            k >>= 1
        return r

    def __call__(self, x):
        """Horner evaluation at a field element, a Poly, or anything with ring ops."""
        if isinstance(x, (int, np.integer)):
            F = self.field
            r = 0
            for a in reversed(self.c.tolist()):
                r = F.sadd(F.smul(r, int(x)), a)
            return r
        if isinstance(x, Poly):
            r = Poly.zero(self.field)
            for a in reversed(self.c.tolist()):
                r = r * x + Poly.const(self.field, a)
            return r
        raise TypeError(f"cannot evaluate at {type(x).__name__}")

    def frob(self, s=1):
        """Coefficient-preserving substitution t -> t^(q^s), i.e. f^(q^s) over F_q."""
        if self.is_zero() or s == 0:
            return self
        Q = self.field.q ** s
        out = np.zeros((self.c.size - 1) * Q + 1, dtype=np.int64)
        out[::Q] = self.c
        return Poly._raw(self.field, out)

    def hasse(self, j):
        """Hasse derivative D_j: t^s -> C(s, j) t^(s-j)."""
        F = self.field
        if j == 0:
            return self
        if self.degree < j:
            return Poly.zero(F)
        out = np.array([F.binom(s, j) for s in range(j, self.c.size)], dtype=np.int64)
        return Poly._raw(F, F.mul(out, self.c[j:]))

    def derivative(self):
        return self.hasse(1)

    def encode(self):
        """Base-q integer code of the coefficient list (lowest digit first)."""
        code = 0
        for a in reversed(self.c.tolist()):
            code = code * self.field.q + a
        return code


def poly(field, coeffs):
    return Poly(field, coeffs)
