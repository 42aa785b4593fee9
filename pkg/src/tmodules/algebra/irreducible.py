"""Monic irreducible polynomials over F_q and factorization over residue fields."""

from __future__ import annotations

import numpy as np

from .fields import GF
from .poly import Poly

# (q, modulus, d) -> int array (count, d + 1) of coefficient rows, lowest first
_irr_cache: dict = {}


def _mobius(n):
    res, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            res = -res
        p += 1
    if m > 1:
        res = -res
    return res


def necklace_count(q, d):
    """Number of monic irreducibles of degree d over F_q."""
    return sum(_mobius(e) * q ** (d // e) for e in range(1, d + 1) if d % e == 0) // d


def _all_monic(F: GF, d):
    """All monic polynomials of degree d as rows; row index = base-q code of the tail."""
    q = F.q
    codes = np.arange(q ** d, dtype=np.int64)
    rows = np.zeros((q ** d, d + 1), dtype=np.int64)
    for i in range(d):
        rows[:, i] = (codes // q ** i) % q
    rows[:, d] = 1
    return rows


def _batch_products(F: GF, G, H):
    """All products g*h for rows g of G and h of H; result (len G, len H, deg)."""
    k, m = G.shape[1], H.shape[1]
    out = np.zeros((G.shape[0], H.shape[0], k + m - 1), dtype=np.int64)
    for i in range(k):
        out[:, :, i:i + m] = F.add(out[:, :, i:i + m], F.mul(G[:, i, None, None], H[None, :, :]))
    return out


def irreducible_rows(F: GF, d):
    """Coefficient rows (lowest first) of all monic irreducibles of degree d.

    Sieve: a monic polynomial of degree d is reducible iff it is a product of
    a monic irreducible of degree k <= d/2 and a monic polynomial of degree d - k.
    """
    if d < 1:
        raise ValueError("degree must be >= 1")
    key = (F.q, F.modulus, d)
    if key in _irr_cache:
        return _irr_cache[key]
    q = F.q
    if d == 1:
        rows = _all_monic(F, 1)
    else:
        reducible = np.zeros(q ** d, dtype=bool)
        weights = q ** np.arange(d, dtype=np.int64)
        for k in range(1, d // 2 + 1):
            G = irreducible_rows(F, k)
            H = _all_monic(F, d - k)
            # chunk over G to bound memory
            step = max(1, (1 << 22) // max(1, H.shape[0] * (d + 1)))
            for a in range(0, G.shape[0], step):
                prods = _batch_products(F, G[a:a + step], H)
                codes = prods[:, :, :d] @ weights
                reducible[codes.ravel()] = True
        allm = _all_monic(F, d)
        rows = allm[~reducible]
    rows.flags.writeable = False
    _irr_cache[key] = rows
    return rows


def enumerate_irreducibles(F, d):
    """Stream the monic irreducibles of degree d over F (a GF or an int q)."""
    if isinstance(F, int):
        F = GF.get(F)
    for row in irreducible_rows(F, d):
        yield Poly._raw(F, row)


def is_irreducible(f: Poly):
    """Rabin's test."""
    F = f.field
    d = f.degree
    if d < 1:
        return False
    if d == 1:
        return True
    f = f.monic()
    t = Poly.x(F)

    def frob_pow(k):
        # t^(q^k) mod f
        r = t
        for _ in range(k):
            r = r.powmod(F.q, f)
        return r

    if not (frob_pow(d) - t).__mod__(f).is_zero():
        return False
    ell = 2
    m = d
    primes = []
    while ell * ell <= m:
        if m % ell == 0:
            primes.append(ell)
            while m % ell == 0:
                m //= ell
        ell += 1
    if m > 1:
        primes.append(m)
    for ell in primes:
        g = (frob_pow(d // ell) - t).gcd(f)
        if g.degree > 0:
            return False
    return True


# ------------------------------------------------------------------ residue fields

class ResidueField:
    """F_q[t]/(pi) for a monic irreducible pi; elements are reduced :class:`Poly`."""

    def __init__(self, pi: Poly):
        if not pi.is_monic() or pi.degree < 1:
            raise ValueError("residue field needs a monic polynomial of degree >= 1")
        self.pi = pi
        self.base = pi.field
        self.deg = pi.degree
        self.order = self.base.q ** self.deg

    def __call__(self, a):
        if isinstance(a, Poly):
            return a % self.pi
        return Poly.const(self.base, self.base.from_int(a)) % self.pi

    def zero(self):
        return Poly.zero(self.base)

    def one(self):
        return Poly.one(self.base)

    def mul(self, a, b):
        return (a * b) % self.pi

    def inv(self, a):
        g, s, _ = a.xgcd(self.pi)
        if not g.is_one():
            raise ZeroDivisionError("not invertible in the residue ring")
        return s % self.pi

    def pow(self, a, k):
        return a.powmod(k, self.pi)

    def random(self, rng):
        return Poly(self.base, rng.integers(0, self.base.q, self.deg))


class _YPoly:
    """Helpers for polynomials in y over a ResidueField (lists, lowest first)."""

    def __init__(self, K: ResidueField):
        self.K = K

    def trim(self, a):
        a = list(a)
        while a and a[-1].is_zero():
            a.pop()
        return a

    def add(self, a, b):
        n = max(len(a), len(b))
        z = self.K.zero()
        return self.trim([(a[i] if i < len(a) else z) + (b[i] if i < len(b) else z)
                          for i in range(n)])

    def neg(self, a):
        return [(-x) % self.K.pi for x in a]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if not a or not b:
            return []
        out = [self.K.zero() for _ in range(len(a) + len(b) - 1)]
        for i, x in enumerate(a):
            if x.is_zero():
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return self.trim([c % self.K.pi for c in out])

    def divmod(self, a, b):
        b = self.trim(b)
        if not b:
            raise ZeroDivisionError("division by zero polynomial")
        a = self.trim(a)
        inv = self.K.inv(b[-1])
        qt = [self.K.zero() for _ in range(max(len(a) - len(b) + 1, 0))]
        a = list(a)
        while len(a) >= len(b):
            c = self.K.mul(a[-1], inv)
            k = len(a) - len(b)
            qt[k] = c
            for i, y in enumerate(b):
                a[k + i] = (a[k + i] - c * y) % self.K.pi
            a = self.trim(a)
        return self.trim(qt), a

    def mod(self, a, b):
        return self.divmod(a, b)[1]

    def monic(self, a):
        a = self.trim(a)
        if not a:
            return a
        inv = self.K.inv(a[-1])
        return [self.K.mul(x, inv) for x in a]

    def gcd(self, a, b):
        a, b = self.trim(a), self.trim(b)
        while b:
            a, b = b, self.mod(a, b)
        return self.monic(a)

    def deriv(self, a):
        F = self.K.base
        return self.trim([a[i].scale(F.from_int(i)) for i in range(1, len(a))])

    def powmod(self, a, k, m):
        r = [self.K.one()]
        b = self.mod(a, m)
        while k:
            if k & 1:
                r = self.mod(self.mul(r, b), m)
            b = self.mod(self.mul(b, b), m)
            k >>= 1
        return self.mod(r, m)

    def deg(self, a):
        return len(self.trim(a)) - 1


class FactorResult:
    """Factors of f mod pi, each monic with multiplicity."""

    def __init__(self, factors, squarefree):
        self.factors = factors
        self.squarefree = squarefree

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)

    def __repr__(self):
        return f"FactorResult({len(self.factors)} factors, squarefree={self.squarefree})"


def factor_mod(f, pi: Poly, seed=0):
    """Factor f(y) = sum_k f[k] y^k (f[k] in F_q[t], f monic in y) over F_q[t]/(pi).

    Distinct-degree then equal-degree (Cantor-Zassenhaus) splitting.  Returns a
    :class:`FactorResult`; ``squarefree`` is False if any multiplicity exceeds 1.
    """
    K = ResidueField(pi)
    Y = _YPoly(K)
    f = Y.trim([K(a) for a in f])
    if not f or not f[-1].is_one():
        raise ValueError("factor_mod needs a polynomial that is monic in y")
    rng = np.random.default_rng(seed)
    found = []
    _factor_rec(Y, f, 1, found, rng)
    merged: dict = {}
    for g, m in found:
        key = tuple(tuple(x.coeffs()) for x in g)
        if key in merged:
            merged[key] = (merged[key][0], merged[key][1] + m)
        else:
            merged[key] = (g, m)
    factors = sorted(merged.values(), key=lambda gm: (len(gm[0]), [x.coeffs() for x in gm[0]]))
    return FactorResult(factors, all(m == 1 for _, m in factors))


def _pth_root(Y, f):
    K = Y.K
    p = K.base.p
    e = K.order // p
    return [K.pow(f[i], e) for i in range(0, len(f), p)]


def _factor_rec(Y, f, mult, found, rng):
    if Y.deg(f) < 1:
        return
    d = Y.deriv(f)
    if not d:
        _factor_rec(Y, _pth_root(Y, f), mult * Y.K.base.p, found, rng)
        return
    g = Y.gcd(f, d)
    sqf = Y.divmod(f, g)[0]
    rest = f
    for h in _squarefree_factor(Y, Y.monic(sqf), rng):
        m = 0
        while True:
            qt, r = Y.divmod(rest, h)
            if r:
                break
            rest, m = qt, m + 1
        found.append((h, m * mult))
    if Y.deg(rest) >= 1:
        _factor_rec(Y, Y.monic(rest), mult, found, rng)


def _squarefree_factor(Y, f, rng):
    K = Y.K
    out = []
    yv = [K.zero(), K.one()]
    h = yv
    i = 0
    while Y.deg(f) >= 2 * (i + 1):
        i += 1
        h = Y.powmod(h, K.order, f)
        g = Y.gcd(f, Y.sub(h, yv))
        if Y.deg(g) > 0:
            out.extend(_equal_degree(Y, g, i, rng))
            f = Y.divmod(f, g)[0]
            h = Y.mod(h, f) if Y.deg(f) > 0 else h
    if Y.deg(f) > 0:
        out.append(Y.monic(f))
    return out


def _equal_degree(Y, g, i, rng):
    K = Y.K
    if Y.deg(g) == i:
        return [Y.monic(g)]
    Q = K.order
    while True:
        a = Y.trim([K.random(rng) for _ in range(Y.deg(g))])
        if Y.deg(a) < 1:
            continue
        if K.base.p == 2:
            m = (Q ** i).bit_length() - 1
            b = Y.mod(a, g)
            tr = b
            for _ in range(m - 1):
                b = Y.mod(Y.mul(b, b), g)
                tr = Y.add(tr, b)
        else:
            tr = Y.sub(Y.powmod(a, (Q ** i - 1) // 2, g), [K.one()])
        d = Y.gcd(g, tr)
        if 0 < Y.deg(d) < Y.deg(g):
            return (_equal_degree(Y, d, i, rng)
                    + _equal_degree(Y, Y.divmod(g, d)[0], i, rng))
