"""Euler factors, the infinite-place special L-value, and zeta values.

Truncated series in u = t^-1 are handled as int arrays of length N (entry k is
the coefficient of t^-k); per-degree blocks of primes are processed in batches.
"""

from __future__ import annotations

import math

import numpy as np

from ..algebra import GF, LaurentSeries, Poly, PrecisionError
from ..algebra.irreducible import factor_mod, irreducible_rows
from ..algebra.linalg import char_poly, char_poly_batch, companion
from .model import TModule, ceil_div


class UncertifiedPrecisionError(PrecisionError):
    """The Euler product could not be certified to the requested precision."""


class NonMaximalError(ValueError):
    """The monogenic order is not maximal at some prime."""


# ------------------------------------------------------------- batch helpers

def field_sum(F: GF, arr, axis=0):
    arr = np.asarray(arr, dtype=np.int64)
    if F.is_prime:
        return arr.sum(axis=axis) % F.p
    arr = np.moveaxis(arr, axis, 0)
    out = np.zeros(arr.shape[1:], dtype=np.int64)
    for a in arr:
        out = F.add(out, a)
    return out


def trunc_mul(F: GF, a, b, N):
    """Product of batched truncated series (last axis = coefficient)."""
    a = np.asarray(a, dtype=np.int64)[..., :N]
    b = np.asarray(b, dtype=np.int64)[..., :N]
    shape = np.broadcast_shapes(a.shape[:-1], b.shape[:-1]) + (N,)
    out = np.zeros(shape, dtype=np.int64)
    for i in range(min(a.shape[-1], N)):
        m = min(b.shape[-1], N - i)
        if m <= 0:
            break
        out[..., i:i + m] = F.add(out[..., i:i + m], F.mul(a[..., i:i + 1], b[..., :m]))
    return out


def trunc_div(F: GF, a, b, N):
    """a / b for batched truncated series with b[..., 0] == 1."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    shape = np.broadcast_shapes(a.shape[:-1], b.shape[:-1]) + (N,)
    out = np.zeros(shape, dtype=np.int64)
    A = np.zeros(shape, dtype=np.int64)
    A[..., :min(N, a.shape[-1])] = a[..., :N]
    for k in range(N):
        acc = A[..., k]
        for j in range(1, min(k, b.shape[-1] - 1) + 1):
            acc = F.sub(acc, F.mul(b[..., j], out[..., k - j]))
        out[..., k] = acc
    return out


def tree_product(F: GF, S, N):
    """Product of the rows of S (shape (B, N)) as truncated series."""
    S = np.asarray(S, dtype=np.int64)
    if S.shape[0] == 0:
        one = np.zeros(N, dtype=np.int64)
        one[0] = 1
        return one
    while S.shape[0] > 1:
        if S.shape[0] % 2:
            S = np.concatenate([S, np.eye(1, N, dtype=np.int64)])
        S = trunc_mul(F, S[0::2], S[1::2], N)
    return S[0]


def poly_rows_mul(F: GF, a, b):
    """Batched full polynomial products of coefficient rows (lowest first)."""
    out = np.zeros(a.shape[:-1] + (a.shape[-1] + b.shape[-1] - 1,), dtype=np.int64)
    for i in range(a.shape[-1]):
        out[..., i:i + b.shape[-1]] = F.add(out[..., i:i + b.shape[-1]],
                                            F.mul(a[..., i:i + 1], b))
    return out


def _series_of_ratio(F, num_rows, den_rows, N):
    """num/den in t^-1 for batched monic rows of equal degree."""
    A = num_rows[..., ::-1]
    B = den_rows[..., ::-1]
    return trunc_div(F, A, B, N)


def _val_minus_one(num_rows, den_rows, F):
    """Exact val(num/den - 1) for monic rows of equal degree (inf if equal)."""
    diff = F.sub(num_rows, den_rows)
    nz = diff != 0
    any_nz = nz.any(axis=-1)
    last = diff.shape[-1] - 1 - np.argmax(nz[..., ::-1], axis=-1)
    deg = den_rows.shape[-1] - 1
    out = np.where(any_nz, deg - last, np.iinfo(np.int64).max)
    return out


# ------------------------------------------------------ batched matrices mod pi

def _batch_eye(B, d):
    return np.broadcast_to(np.eye(d, dtype=np.int64), (B, d, d)).copy()


def _batch_companion(F, P):
    """Companion matrices (multiplication by z on F_q[z]/pi) for rows P (B, d+1)."""
    B, d1 = P.shape
    d = d1 - 1
    C = np.zeros((B, d, d), dtype=np.int64)
    C[:, 1:, :-1] = np.eye(d - 1, dtype=np.int64)
    C[:, :, -1] = F.neg(P[:, :d])
    return C


def _batch_poly_at(F, a: Poly, C):
    B, d, _ = C.shape
    out = np.zeros((B, d, d), dtype=np.int64)
    eye = _batch_eye(B, d)
    for c in reversed(a.coeffs()):
        out = F.matmul(out, C)
        if c:
            out = F.add(out, F.mul(eye, c))
    return out


def _batch_matpow(F, X, k):
    B, d, _ = X.shape
    R = _batch_eye(B, d)
    while k:
        if k & 1:
            R = F.matmul(R, X)
        X = F.matmul(X, X)
        k >>= 1
    return R


def _batch_frobenius(F, C):
    """Matrix of x -> x^q on F_q[z]/pi given the companion matrices C."""
    B, d, _ = C.shape
    X = _batch_matpow(F, C, F.q)
    Fr = np.zeros((B, d, d), dtype=np.int64)
    v = np.zeros((B, d, 1), dtype=np.int64)
    v[:, 0, 0] = 1
    for j in range(d):
        Fr[:, :, j] = v[:, :, 0]
        v = F.matmul(X, v)
    return Fr


def _batch_phi(E: TModule, C, Fr):
    """Matrices of phi(t) = sum_s A_s tau^s on (F_q[z]/pi)^n, batched."""
    F = E.field
    B, d, _ = C.shape
    n = E.n
    Phi = np.zeros((B, n * d, n * d), dtype=np.int64)
    FrS = _batch_eye(B, d)
    cache = {}
    for s, A in enumerate(E.A):
        if s > 0:
            FrS = F.matmul(FrS, Fr)
        for i in range(n):
            for j in range(n):
                a = A[i][j]
                if a.is_zero():
                    continue
                key = tuple(a.coeffs())
                if key not in cache:
                    cache[key] = _batch_poly_at(F, a, C)
                blk = F.matmul(cache[key], FrS)
                sl = (slice(None), slice(i * d, (i + 1) * d), slice(j * d, (j + 1) * d))
                Phi[sl] = F.add(Phi[sl], blk)
    return Phi


def _batch_lie(E: TModule, C):
    F = E.field
    B, d, _ = C.shape
    n = E.n
    L = np.zeros((B, n * d, n * d), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            a = E.A[0][i][j]
            if not a.is_zero():
                L[:, i * d:(i + 1) * d, j * d:(j + 1) * d] = _batch_poly_at(F, a, C)
    return L


# ------------------------------------------------------------- single prime

class MonogenicPrime:
    """Maximal ideal (pi, g(y)) of k[z][y]/(f) with g a monic irreducible factor mod pi."""

    def __init__(self, pi: Poly, g):
        self.pi = pi
        self.g = list(g)

    @property
    def degree(self):
        return self.pi.degree * (len(self.g) - 1)

    def describe(self):
        return {"pi": [int(a) for a in self.pi.c],
                "g": [[int(a) for a in c.c] for c in self.g]}

    def __repr__(self):
        return f"MonogenicPrime(pi={self.pi.to_str('z')}, deg g={len(self.g) - 1})"


def residue_algebra(F: GF, pi: Poly, g=None):
    """(Mz, Fr): matrices of z-multiplication and of x -> x^q on k[z][y]/(pi, g).

    ``g`` is a list of Poly (coefficients of y^k mod pi, monic); None means g = y,
    i.e. the residue field k[z]/(pi) itself.  Basis: z^a y^b, index a + deg(pi) b.
    """
    if pi.degree < 1 or not pi.is_monic():
        raise ValueError("not a maximal ideal: pi must be monic of degree >= 1")
    d = pi.degree
    C = companion(F, pi)
    gd = 1 if g is None else len(g) - 1
    D = d * gd
    Mz = np.zeros((D, D), dtype=np.int64)
    My = np.zeros((D, D), dtype=np.int64)
    for b in range(gd):
        Mz[b * d:(b + 1) * d, b * d:(b + 1) * d] = C
    if g is None:
        My = np.zeros((D, D), dtype=np.int64)  # y = 0 in k[z][y]/(y)
    else:
        for b in range(gd - 1):
            My[(b + 1) * d:(b + 2) * d, b * d:(b + 1) * d] = np.eye(d, dtype=np.int64)
        for k in range(gd):
            blk = _batch_poly_at(F, g[k] % pi, C[None])[0]
            My[k * d:(k + 1) * d, (gd - 1) * d:gd * d] = F.neg(blk)
    Xz = _batch_matpow(F, Mz[None], F.q)[0]
    Xy = _batch_matpow(F, My[None], F.q)[0] if gd > 1 else None
    Fr = np.zeros((D, D), dtype=np.int64)
    e0 = np.zeros((D, 1), dtype=np.int64)
    e0[0, 0] = 1
    yb = e0
    for b in range(gd):
        v = yb
        for a in range(d):
            Fr[:, a + d * b] = v[:, 0]
            v = F.matmul(Xz, v)
        if Xy is not None:
            yb = F.matmul(Xy, yb)
    return Mz, Fr


def _block_poly_matrix(F, A, Mz):
    n = len(A)
    D = Mz.shape[0]
    out = np.zeros((n * D, n * D), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            if not A[i][j].is_zero():
                out[i * D:(i + 1) * D, j * D:(j + 1) * D] = _batch_poly_at(F, A[i][j], Mz[None])[0]
    return out


def _as_prime(m):
    if isinstance(m, MonogenicPrime):
        return m.pi, m.g
    if isinstance(m, Poly):
        return m, None
    raise ValueError(f"not a maximal-ideal descriptor: {m!r}")


def reduce_mod_prime(E: TModule, m):
    """(Lie, Phi): F_q-matrices of A_0 and of sum_s A_s tau^s on (R/m)^n."""
    pi, g = _as_prime(m)
    F = E.field
    if pi.field != F:
        raise ValueError("prime over a different field")
    if not pi.is_monic():
        raise ValueError("not a maximal ideal: pi must be monic")
    if g is None and pi.degree >= 1 and pi.degree <= 12:
        from ..algebra.irreducible import is_irreducible
        if not is_irreducible(pi):
            raise ValueError(f"not a maximal ideal: {pi.to_str('z')} is reducible")
    Mz, Fr = residue_algebra(F, pi, g)
    D = Mz.shape[0]
    n = E.n
    Lie = _block_poly_matrix(F, E.A[0], Mz)
    Phi = np.zeros((n * D, n * D), dtype=np.int64)
    FrS = np.eye(D, dtype=np.int64)
    FrBlk = np.zeros((n * D, n * D), dtype=np.int64)
    for s, A in enumerate(E.A):
        if s > 0:
            FrS = F.matmul(FrS, Fr)
        for i in range(n):
            FrBlk[i * D:(i + 1) * D, i * D:(i + 1) * D] = FrS
        Phi = F.add(Phi, F.matmul(_block_poly_matrix(F, A, Mz), FrBlk))
    return Lie, Phi


class EulerFactorReport:
    def __init__(self, prime, degree, numerator, denominator, factor, val_minus_one):
        self.prime = prime
        self.degree = degree
        self.numerator = numerator
        self.denominator = denominator
        self.factor = factor
        self.val_minus_one = val_minus_one

    def to_dict(self):
        pr = (self.prime.describe() if isinstance(self.prime, MonogenicPrime)
              else {"pi": [int(a) for a in self.prime.c]})
        return {
            "prime": pr,
            "degree": self.degree,
            "numerator": [int(a) for a in self.numerator.c],
            "denominator": [int(a) for a in self.denominator.c],
            "factor": self.factor.to_dict(),
            "val_factor_minus_one": (None if self.val_minus_one == math.inf
                                     else int(self.val_minus_one)),
        }


def euler_factor(E: TModule, m, prec=10) -> EulerFactorReport:
    """|Lie(E)(R/m)| / |E(R/m)| as a series in t^-1 to absolute precision ``prec``."""
    F = E.field
    Lie, Phi = reduce_mod_prime(E, m)
    num = char_poly(F, Lie)
    den = char_poly(F, Phi)
    diff = num - den
    deg = den.degree
    vm1 = math.inf if diff.is_zero() else deg - diff.degree
    fac = LaurentSeries.from_poly(num).div(LaurentSeries.from_poly(den), prec)
    pi, g = _as_prime(m)
    degree = pi.degree * (1 if g is None else len(g) - 1)
    return EulerFactorReport(m, degree, num, den, fac, vm1)


# ------------------------------------------------------------------ L-value

class LValueResult:
    """Outcome of an Euler-product computation with its certification flags."""

    def __init__(self, series, prec, max_deg, primes_used, heuristic_ok, tail_ok,
                 stable, violations, exact=False):
        self.series = series
        self.prec = prec
        self.max_deg = max_deg
        self.primes_used = primes_used
        self.heuristic_ok = heuristic_ok
        self.tail_ok = tail_ok
        self.stable = stable
        self.violations = violations
        self.exact = exact

    @property
    def certified(self):
        return self.exact or (self.heuristic_ok and self.tail_ok)

    def coefficients(self):
        return self.series.coeffs_between(0, self.prec).tolist()

    def flags(self):
        return {
            "euler_degree_bound": self.max_deg,
            "euler_primes_used": self.primes_used,
            "euler_heuristic_satisfied": bool(self.heuristic_ok),
            "euler_tail_bound_reached": bool(self.tail_ok),
            "euler_stable_two_increments": bool(self.stable),
            "euler_bound_is_heuristic": not self.exact,
            "certified": bool(self.certified),
        }


def heuristic_bound(n, r, d):
    """Required val(factor - 1) for a prime of degree d (runtime heuristic)."""
    return ceil_div(n * d, max(r, 1))


def default_max_degree(q, n=1):
    # about 4 million candidate polynomials in the last sieve
    return max(1, int(22 / math.log2(q)))


def _degree_block(E: TModule, d, N):
    """Product of the Euler factors of all primes of degree d, plus statistics."""
    F = E.field
    P = irreducible_rows(F, d)
    n = E.n
    out = np.zeros(N, dtype=np.int64)
    out[0] = 1
    count = P.shape[0]
    bound = heuristic_bound(n, E.r, d)
    bad = []
    chunk = max(1, 200000 // (n * d) ** 2)
    for a in range(0, count, chunk):
        rows = P[a:a + chunk]
        C = _batch_companion(F, rows)
        Fr = _batch_frobenius(F, C)
        Phi = _batch_phi(E, C, Fr)
        den = char_poly_batch(F, Phi)
        # Lie(E)(R/m): A_0 = z + nilpotent commuting with z, so |Lie| = pi^n
        num = rows
        for _ in range(n - 1):
            num = poly_rows_mul(F, num, rows)
        vm1 = _val_minus_one(num, den, F)
        viol = np.nonzero(vm1 < bound)[0]
        for i in viol[:5]:
            bad.append({"prime": rows[i].tolist(), "val": int(vm1[i]), "bound": bound})
        keep = vm1 < N
        if keep.any():
            S = _series_of_ratio(F, num[keep], den[keep], N)
            out = trunc_mul(F, out, tree_product(F, S, N), N)
    return out, count, bad


def _monogenic_degree_block(E: TModule, d, N):
    F = E.field
    n = E.n
    out = np.zeros(N, dtype=np.int64)
    out[0] = 1
    count = 0
    bad = []
    for row in irreducible_rows(F, d):
        pi = Poly._raw(F, row)
        fac = factor_mod(E.ring, pi)
        if not fac.squarefree:
            raise NonMaximalError(f"non-maximal locus detected at {pi.to_str('z')}")
        for g, _ in fac:
            m = MonogenicPrime(pi, g)
            rep = euler_factor(E, m, N)
            count += 1
            b = heuristic_bound(n, E.r, m.degree)
            if rep.val_minus_one < b:
                bad.append({"prime": m.describe(), "val": rep.val_minus_one, "bound": b})
            if rep.val_minus_one < N:
                out = trunc_mul(F, out, rep.factor.coeffs_between(0, N), N)
    return out, count, bad


def l_value(E: TModule, prec=10, max_deg=None, adaptive=True, strict=True) -> LValueResult:
    """L(E/R) = prod_m |Lie(E)(R/m)| / |E(R/m)| to absolute precision ``prec``.

    With ``adaptive`` the degree bound is raised until (a) the coefficients are
    unchanged by two consecutive degree increments, (b) every factor met the
    heuristic val(factor - 1) >= ceil(n d / max(r, 1)), and (c) that heuristic
    places all primes of larger degree beyond t^-prec; ``max_deg`` caps the
    search.  Without ``adaptive`` exactly the primes of degree <= max_deg are
    used.  ``strict`` raises :class:`UncertifiedPrecisionError` on failure.
    """
    if prec < 1:
        raise ValueError("precision must be >= 1")
    F = E.field
    N = prec
    if E.r == 0:
        one = LaurentSeries(F, 0, [1], N)
        return LValueResult(one, N, 0, 0, True, True, True, [], exact=True)
    cap = max_deg if max_deg is not None else default_max_degree(F.q, E.n)
    if not adaptive and max_deg is None:
        raise ValueError("a fixed degree bound needs max_deg")
    block = _monogenic_degree_block if E.is_monogenic() else _degree_block
    total = np.zeros(N, dtype=np.int64)
    total[0] = 1
    history = [total.copy()]
    used = 0
    violations = []
    d = 0
    stable = tail_ok = False
    while d < cap:
        d += 1
        b, cnt, bad = block(E, d, N)
        used += cnt
        violations.extend(bad)
        total = trunc_mul(F, total, b, N)
        history.append(total.copy())
        stable = (len(history) >= 3 and np.array_equal(history[-1], history[-2])
                  and np.array_equal(history[-2], history[-3]))
        tail_ok = heuristic_bound(E.n, E.r, d + 1) >= N
        if adaptive and stable and tail_ok and not violations:
            break
    res = LValueResult(LaurentSeries(F, 0, total, N), N, d, used, not violations,
                       tail_ok, stable, violations)
    if strict and not res.certified:
        why = "heuristic violated" if violations else "degree bound exhausted"
        raise UncertifiedPrecisionError(
            f"precision not certified: {why} at degree bound {d}")
    return res


def euler_product(factors, prec):
    """Product of factor series (any order) truncated to ``prec``."""
    if not factors:
        raise ValueError("empty product")
    F = factors[0].field
    out = np.zeros(prec, dtype=np.int64)
    out[0] = 1
    for f in factors:
        out = trunc_mul(F, out, f.coeffs_between(0, prec), prec)
    return LaurentSeries(F, 0, out, prec)


# ------------------------------------------------------------------ zeta values

def _all_monic_rows(F, d):
    q = F.q
    codes = np.arange(q ** d, dtype=np.int64)
    rows = np.zeros((q ** d, d + 1), dtype=np.int64)
    for i in range(d):
        rows[:, i] = (codes // q ** i) % q
    rows[:, d] = 1
    return rows


def zeta_sum(q, n, prec, field=None):
    """sum over monic a in F_q[t] of a^-n, to absolute precision ``prec``.

    The degree-d block has valuation >= n d, so blocks with n d >= prec are
    omitted.
    """
    F = field or GF.get(q)
    N = prec
    total = np.zeros(N, dtype=np.int64)
    total[0] = 1
    d = 1
    while n * d < N:
        M = N - n * d
        rows = _all_monic_rows(F, d)
        A = rows[:, ::-1][:, :M]
        An = np.zeros((rows.shape[0], M), dtype=np.int64)
        An[:, 0] = 1
        for _ in range(n):
            An = trunc_mul(F, An, A, M)
        one = np.zeros(M, dtype=np.int64)
        one[0] = 1
        inv = trunc_div(F, one[None, :], An, M)
        blk = field_sum(F, inv, axis=0)
        total[n * d:] = F.add(total[n * d:], blk)
        d += 1
    return LaurentSeries(F, 0, total, N)


def brute_force_zeta(q, n, prec, max_degree, field=None):
    """Direct sum of a^-n over monic a of degree <= max_degree (test oracle)."""
    F = field or GF.get(q)
    total = LaurentSeries(F, 0, [1], prec)
    for d in range(1, max_degree + 1):
        for row in _all_monic_rows(F, d):
            a = LaurentSeries.from_poly(Poly(F, row))
            total = total + LaurentSeries.one(F).div(a ** n, prec)
    return total


def zeta_monogenic(f, n, prec, max_deg=None, field=None, q=None):
    """zeta(R, n) for R = k[t][y]/(f), f monic in y with k[t]-coefficients.

    Euler product over maximal ideals lying over primes of degree <= max_deg;
    |R/m| is the characteristic polynomial of t on R/m.  Raises
    :class:`NonMaximalError` at primes where f mod pi has a repeated factor.
    """
    if field is None:
        field = f[0].field if f else GF.get(q)
    F = field
    N = prec
    if max_deg is None:
        max_deg = max(1, ceil_div(N, n) - 1)
    total = np.zeros(N, dtype=np.int64)
    total[0] = 1
    for d in range(1, max_deg + 1):
        for row in irreducible_rows(F, d):
            pi = Poly._raw(F, row)
            fac = factor_mod(f, pi)
            if not fac.squarefree:
                raise NonMaximalError(f"non-maximal locus detected at {pi.to_str('t')}")
            for g, _ in fac:
                Mz, _ = residue_algebra(F, pi, g)
                norm = char_poly(F, Mz)
                nn = norm ** n
                if nn.degree >= N:
                    continue
                ser = _series_of_ratio(F, nn.c[None, :], (nn - 1).c[None, :], N)[0]
                total = trunc_mul(F, total, ser, N)
    return LaurentSeries(F, 0, total, N)


def local_norm(F, m):
    """|R/m| as the characteristic polynomial of t acting on R/m."""
    pi, g = _as_prime(m)
    Mz, _ = residue_algebra(F, pi, g)
    return char_poly(F, Mz)
