"""Finite fields F_q with q = p^f, q <= 256.

Elements are plain integers 0 <= a < q.  For q = p^f the integer encodes the
residue polynomial over F_p in base p (digit i is the coefficient of x^i).
All element-wise operations accept numpy integer arrays and broadcast.
"""

from __future__ import annotations

import itertools

import numpy as np

MAX_Q = 256

_cache: dict = {}


def _factor_prime_power(q):
    if q < 2:
        raise ValueError(f"q must be a prime power >= 2, got {q}")
    for p in range(2, q + 1):
        if q % p == 0:
            f, m = 0, q
            while m % p == 0:
                m //= p
                f += 1
            if m != 1:
                raise ValueError(f"q={q} is not a prime power")
            return p, f
    raise AssertionError


def _fp_poly_mod(a, m, p):
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        a.pop()
    return a


def _fp_is_irreducible(m, p):
    # brute force over monic divisors of degree <= deg/2; fine for q <= 256
    d = len(m) - 1
    for k in range(1, d // 2 + 1):
        for tail in itertools.product(range(p), repeat=k):
            g = list(tail) + [1]
            if not any(_fp_poly_mod(m, g, p)):
                return False
    return True


def default_modulus(p, f):
    """Lexicographically first monic irreducible of degree f over F_p."""
    for tail in itertools.product(range(p), repeat=f):
        m = list(reversed(tail)) + [1]
        if m[0] != 0 and _fp_is_irreducible(m, p):
            return tuple(m)
    raise AssertionError("no irreducible found")


class GF:
    """The finite field with q elements.

    Use :func:`GF.get` rather than the constructor so that equal fields are
    shared objects.
    """

    def __init__(self, q, modulus=None):
        p, f = _factor_prime_power(q)
        if q > MAX_Q:
            raise ValueError(f"q={q} exceeds the supported bound {MAX_Q}")
        self.q, self.p, self.f = q, p, f
        if f == 1:
            if modulus not in (None, (0, 1), [0, 1]):
                raise ValueError("prime fields take no modulus")
            self.modulus = None
        else:
            m = tuple(int(c) % p for c in (modulus or default_modulus(p, f)))
            if len(m) != f + 1 or m[-1] != 1:
                raise ValueError(f"modulus must be monic of degree {f}")
            if not _fp_is_irreducible(list(m), p):
                raise ValueError(f"modulus {m} is reducible over F_{p}")
            self.modulus = m
        self._build_tables()

    @classmethod
    def get(cls, q, modulus=None):
        key = (q, tuple(modulus) if modulus is not None else None)
        if key not in _cache:
            _cache[key] = cls(q, modulus)
        return _cache[key]

    @property
    def is_prime(self):
        return self.f == 1

    def _digits(self, a):
        return [(a // self.p ** i) % self.p for i in range(self.f)]

    def _undigits(self, ds):
        return sum(int(d) * self.p ** i for i, d in enumerate(ds))

    def _build_tables(self):
        q, p = self.q, self.p
        if self.is_prime:
            r = np.arange(q)
            self.add_t = (r[:, None] + r[None, :]) % p
            self.mul_t = (r[:, None] * r[None, :]) % p
        else:
            self.add_t = np.zeros((q, q), dtype=np.int64)
            self.mul_t = np.zeros((q, q), dtype=np.int64)
            digs = [self._digits(a) for a in range(q)]
            for a in range(q):
                for b in range(q):
                    self.add_t[a, b] = self._undigits(
                        [(x + y) % p for x, y in zip(digs[a], digs[b])])
                    prod = [0] * (2 * self.f - 1)
                    for i, x in enumerate(digs[a]):
                        for j, y in enumerate(digs[b]):
                            prod[i + j] = (prod[i + j] + x * y) % p
                    self.mul_t[a, b] = self._undigits(
                        (_fp_poly_mod(prod, self.modulus, p) + [0] * self.f)[:self.f])
        self.add_t = self.add_t.astype(np.int64)
        self.mul_t = self.mul_t.astype(np.int64)
        self.neg_t = np.array([int(np.nonzero(self.add_t[a] == 0)[0][0]) for a in range(q)],
                              dtype=np.int64)
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            inv[a] = int(np.nonzero(self.mul_t[a] == 1)[0][0])
        self.inv_t = inv
        self.sub_t = self.add_t[:, self.neg_t]
        # python-list copies for fast scalar work
        self._add_l = self.add_t.tolist()
        self._mul_l = self.mul_t.tolist()
        self._neg_l = self.neg_t.tolist()
        self._inv_l = self.inv_t.tolist()

    def __repr__(self):
        if self.is_prime:
            return f"GF({self.q})"
        return f"GF({self.q}, modulus={list(self.modulus)})"

    def __eq__(self, other):
        return isinstance(other, GF) and (self.q, self.modulus) == (other.q, other.modulus)

    def __hash__(self):
        return hash((self.q, self.modulus))

    # element-wise (scalars or arrays)
    def add(self, a, b):
        if self.is_prime:
            return (a + b) % self.p
        return self.add_t[a, b]

    def sub(self, a, b):
        if self.is_prime:
            return (a - b) % self.p
        return self.sub_t[a, b]

    def neg(self, a):
        if self.is_prime:
            return (-a) % self.p
        return self.neg_t[a]

    def mul(self, a, b):
        if self.is_prime:
            return (a * b) % self.p
        return self.mul_t[a, b]

    def inv(self, a):
        if np.any(np.asarray(a) == 0):
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self.inv_t[a]

    # python-int scalar versions
    def sadd(self, a, b):
        return (a + b) % self.p if self.f == 1 else self._add_l[a][b]

    def ssub(self, a, b):
        return (a - b) % self.p if self.f == 1 else self._add_l[a][self._neg_l[b]]

    def smul(self, a, b):
        return a * b % self.p if self.f == 1 else self._mul_l[a][b]

    def sneg(self, a):
        return -a % self.p if self.f == 1 else self._neg_l[a]

    def sinv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return pow(a, self.p - 2, self.p) if self.f == 1 else self._inv_l[a]

    def spow(self, a, k):
        r = 1
        while k:
            if k & 1:
                r = self.smul(r, a)
            a = self.smul(a, a)
            k >>= 1
        return r

    def from_int(self, c):
        """Map an integer to F_p inside F_q (reduction mod p)."""
        return int(c) % self.p

    def binom(self, m, j):
        """C(m, j) reduced into F_p, for any integer m and j >= 0."""
        if j < 0:
            return 0
        if m < 0:
            # C(m, j) = (-1)^j C(j - m - 1, j)
            v = _binom_mod_p(j - m - 1, j, self.p)
            return v if j % 2 == 0 else (-v) % self.p
        return _binom_mod_p(m, j, self.p)

    # sequences
    def conv(self, a, b):
        """Product of coefficient sequences a, b (1-d int arrays)."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if a.size == 0 or b.size == 0:
            return np.zeros(0, dtype=np.int64)
        if self.is_prime:
            if min(a.size, b.size) * (self.p - 1) ** 2 < 2 ** 62:
                return np.convolve(a, b) % self.p
        if a.size > b.size:
            a, b = b, a
        out = np.zeros(a.size + b.size - 1, dtype=np.int64)
        for i in np.nonzero(a)[0]:
            seg = out[i:i + b.size]
            out[i:i + b.size] = self.add(seg, self.mul(a[i], b))
        return out

    def matmul(self, A, B):
        """(Batched) matrix product over F_q; works on the last two axes."""
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        if self.is_prime:
            return np.matmul(A, B) % self.p
        shape = np.broadcast_shapes(A.shape[:-2], B.shape[:-2]) + (A.shape[-2], B.shape[-1])
        out = np.zeros(shape, dtype=np.int64)
        for k in range(A.shape[-1]):
            out = self.add(out, self.mul(A[..., :, k:k + 1], B[..., k:k + 1, :]))
        return out

    def elements(self):
        return range(self.q)


def _binom_mod_p(m, j, p):
    # Lucas' theorem
    r = 1
    while m or j:
        mi, ji = m % p, j % p
        if ji > mi:
            return 0
        num = den = 1
        for k in range(ji):
            num = num * (mi - k) % p
            den = den * (k + 1) % p
        r = r * num * pow(den, p - 2, p) % p
        m //= p
        j //= p
    return r
