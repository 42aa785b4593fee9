"""Abelian t-modules E = (q, n, A_0, ..., A_r) over R = k[z] and twisted polynomials.

The variable of R is written ``z``; the variable ``t`` is reserved for the
k[t]-module structure (acting on Lie(E) through A_0 and on E through phi(t)).
"""

from __future__ import annotations

import json
from pathlib import Path

from ..algebra import GF, Poly
from ..algebra.linalg import pm_add, pm_frob, pm_identity, pm_is_zero, pm_max_degree, pm_mul, pm_zeros


class SchemaError(ValueError):
    """Malformed module description."""


class ValidationError(ValueError):
    """Well-formed description violating the t-module axioms."""


# ------------------------------------------------------------ (de)serialization

def _elem_from_json(F: GF, a):
    if isinstance(a, bool):
        raise SchemaError("field element must be an int or a digit list")
    if isinstance(a, int):
        if not 0 <= a < F.q:
            raise SchemaError(f"field element {a} out of range for q={F.q}")
        return a
    if isinstance(a, list):
        if len(a) > F.f or any(not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < F.p
                               for x in a):
            raise SchemaError(f"bad F_p digit list {a} for q={F.q}")
        return sum(x * F.p ** i for i, x in enumerate(a))
    raise SchemaError(f"field element must be an int or a digit list, got {a!r}")


def _elem_to_json(F: GF, a):
    a = int(a)
    if F.is_prime:
        return a
    return [(a // F.p ** i) % F.p for i in range(F.f)]


def poly_from_json(F: GF, coeffs) -> Poly:
    if not isinstance(coeffs, list):
        raise SchemaError(f"polynomial must be a coefficient list, got {coeffs!r}")
    return Poly(F, [_elem_from_json(F, a) for a in coeffs])


def poly_to_json(p: Poly):
    return [_elem_to_json(p.field, a) for a in p.c]


# ------------------------------------------------------------------ TauPoly

class TauPoly:
    """sum_s B_s tau^s with B_s in M_n(k[z]) and tau P = P^(q) tau."""

    def __init__(self, coeffs):
        coeffs = [[list(r) for r in B] for B in coeffs]
        while len(coeffs) > 1 and pm_is_zero(coeffs[-1]):
            coeffs.pop()
        if not coeffs:
            raise ValueError("TauPoly needs at least one coefficient")
        self.coeffs = coeffs
        self.n = len(coeffs[0])
        self.field = coeffs[0][0][0].field

    @classmethod
    def scalar(cls, F, n, a):
        M = pm_zeros(F, n, n)
        for i in range(n):
            M[i][i] = Poly.const(F, a) if a else Poly.zero(F)
        return cls([M])

    @property
    def order(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return len(self.coeffs) == 1 and pm_is_zero(self.coeffs[0])

    def __add__(self, o):
        m = max(len(self.coeffs), len(o.coeffs))
        Z = pm_zeros(self.field, self.n, self.n)
        a = self.coeffs + [Z] * (m - len(self.coeffs))
        b = o.coeffs + [Z] * (m - len(o.coeffs))
        return TauPoly([pm_add(x, y) for x, y in zip(a, b)])

    def __mul__(self, o):
        out = [pm_zeros(self.field, self.n, self.n)
               for _ in range(len(self.coeffs) + len(o.coeffs) - 1)]
        for s, B in enumerate(self.coeffs):
            if pm_is_zero(B):
                continue
            for u, C in enumerate(o.coeffs):
                if pm_is_zero(C):
                    continue
                out[s + u] = pm_add(out[s + u], pm_mul(B, pm_frob(C, s)))
        return TauPoly(out)

    def __eq__(self, o):
        if not isinstance(o, TauPoly) or len(self.coeffs) != len(o.coeffs):
            return False
        return all(a == b for X, Y in zip(self.coeffs, o.coeffs)
                   for ra, rb in zip(X, Y) for a, b in zip(ra, rb))

    __hash__ = None

    def __repr__(self):
        terms = []
        for s, B in enumerate(self.coeffs):
            if pm_is_zero(B):
                continue
            ent = "[" + "; ".join(", ".join(a.to_str("z") for a in r) for r in B) + "]"
            terms.append(ent + ("" if s == 0 else ("*tau" if s == 1 else f"*tau^{s}")))
        return " + ".join(terms) or "0"

    def apply(self, x):
        """Apply to a column vector x (list of LaurentSeries in z or Poly)."""
        out = None
        for s, B in enumerate(self.coeffs):
            xs = [a.frob(s) for a in x]
            y = [sum((B[i][j] * xs[j] for j in range(1, self.n)), B[i][0] * xs[0])
                 for i in range(self.n)]
            out = y if out is None else [a + b for a, b in zip(out, y)]
        return out


# ------------------------------------------------------------------ TModule

class TModule:
    """Abelian t-module t -> sum_s A_s tau^s with (A_0 - z I_n)^n = 0.

    ``matrices`` is [A_0, ..., A_r], each an n x n list of :class:`Poly` in z.
    Trailing zero matrices are dropped so that A_r != 0 (r = 0 allowed).
    """

    def __init__(self, field: GF, matrices, ring=None, name=None):
        if not matrices:
            raise SchemaError("a t-module needs at least A_0")
        n = len(matrices[0])
        for A in matrices:
            if len(A) != n or any(len(row) != n for row in A):
                raise SchemaError(f"all matrices must be {n} x {n}")
        if n < 1:
            raise SchemaError("dimension must be >= 1")
        mats = [[list(r) for r in A] for A in matrices]
        while len(mats) > 1 and pm_is_zero(mats[-1]):
            mats.pop()
        self.field = field
        self.q = field.q
        self.n = n
        self.A = mats
        self.r = len(mats) - 1
        self.ring = ring
        self.name = name
        z = Poly.x(field)
        self.N = [[a - (z if i == j else Poly.zero(field)) for j, a in enumerate(row)]
                  for i, row in enumerate(mats[0])]
        P = pm_identity(field, n)
        for _ in range(n):
            P = pm_mul(P, self.N)
        if not pm_is_zero(P):
            raise ValidationError("(A_0 - z I_n)^n != 0: A_0 - z I_n is not nilpotent")
        self.e = max(1, pm_max_degree(mats[0]))

    # --- derived data
    @property
    def A0(self):
        return self.A[0]

    def nilpotent_is_constant(self):
        return all(a.degree <= 0 for row in self.N for a in row)

    def max_frobenius_degree(self):
        """Largest entry degree among A_1..A_r (-1 if r = 0 or all zero)."""
        return max((pm_max_degree(A) for A in self.A[1:]), default=-1)

    def phi_t(self) -> TauPoly:
        return TauPoly(self.A)

    def coefficient_degree_bound(self):
        return max(pm_max_degree(A) for A in self.A)

    def is_monogenic(self):
        return self.ring is not None

    def descriptor(self):
        d = {"q": self.q, "n": self.n, "r": self.r, "e": self.e}
        if self.name:
            d["name"] = self.name
        return d

    def __repr__(self):
        return f"TModule(q={self.q}, n={self.n}, r={self.r}, e={self.e})"

    # --- JSON
    def to_json(self):
        F = self.field
        d = {"q": self.q, "n": self.n,
             "matrices": [[[poly_to_json(a) for a in row] for row in A] for A in self.A]}
        if not F.is_prime:
            d["fq_modulus"] = list(F.modulus)
        if self.ring is not None:
            d["ring"] = {"type": "monogenic", "f": [poly_to_json(a) for a in self.ring]}
        return d

    @classmethod
    def from_json(cls, data, name=None):
        if not isinstance(data, dict):
            raise SchemaError("module description must be a JSON object")
        for key in ("q", "n", "matrices"):
            if key not in data:
                raise SchemaError(f"missing key {key!r}")
        q, n = data["q"], data["n"]
        if not isinstance(q, int) or not isinstance(n, int) or n < 1:
            raise SchemaError("q and n must be integers, n >= 1")
        try:
            F = GF.get(q, tuple(data["fq_modulus"]) if data.get("fq_modulus") else None)
        except ValueError as exc:
            raise SchemaError(str(exc)) from exc
        mats = data["matrices"]
        if not isinstance(mats, list) or not mats:
            raise SchemaError("'matrices' must be a nonempty list [A_0, ..., A_r]")
        out = []
        for A in mats:
            if not isinstance(A, list) or len(A) != n:
                raise SchemaError(f"each matrix must have {n} rows")
            rows = []
            for row in A:
                if not isinstance(row, list) or len(row) != n:
                    raise SchemaError(f"each row must have {n} entries")
                rows.append([poly_from_json(F, a) for a in row])
            out.append(rows)
        ring = None
        if "ring" in data:
            rd = data["ring"]
            if not isinstance(rd, dict) or rd.get("type") != "monogenic" or "f" not in rd:
                raise SchemaError("ring must be {'type': 'monogenic', 'f': [...]}")
            ring = [poly_from_json(F, a) for a in rd["f"]]
            while ring and ring[-1].is_zero():
                ring.pop()
            if len(ring) < 2 or not ring[-1].is_one():
                raise SchemaError("monogenic f must be monic in y of degree >= 1")
        return cls(F, out, ring=ring, name=name)

    @classmethod
    def load(cls, path):
        try:
            with open(path) as fh:
                data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}") from exc
        return cls.from_json(data, name=Path(path).stem)


def phi_of(E: TModule, a: Poly) -> TauPoly:
    """phi_E(a) for a in F_q[t], by Horner in phi(t)."""
    F = E.field
    phi = E.phi_t()
    out = TauPoly.scalar(F, E.n, 0)
    for c in reversed(a.coeffs()):
        out = out * phi + TauPoly.scalar(F, E.n, c)
    return out


def make_carlitz_power(q, n, field=None) -> TModule:
    """The n-th tensor power of the Carlitz module."""
    if n < 1:
        raise ValueError("n must be >= 1")
    F = field or GF.get(q)
    z = Poly.x(F)
    one = Poly.one(F)
    A0 = pm_zeros(F, n, n)
    A1 = pm_zeros(F, n, n)
    for i in range(n):
        A0[i][i] = z
        if i + 1 < n:
            A0[i][i + 1] = one
    A1[n - 1][0] = one
    name = "carlitz" if n == 1 else f"carlitz^{n}"
    return TModule(F, [A0, A1], name=name)


def drinfeld_module(q, coeffs, field=None) -> TModule:
    """Rank-r Drinfeld module phi_t = z + g_1 tau + ... + g_r tau^r (g_s as Poly or lists)."""
    F = field or GF.get(q)
    mats = [[[Poly.x(F)]]]
    for g in coeffs:
        mats.append([[g if isinstance(g, Poly) else Poly(F, g)]])
    return TModule(F, mats, name="drinfeld")


def constant_module(F: GF, n=1) -> TModule:
    """The r = 0 module t -> z I_n."""
    z = Poly.x(F)
    A0 = pm_zeros(F, n, n)
    for i in range(n):
        A0[i][i] = z
    return TModule(F, [A0], name="trivial")


def ceil_div(a, b):
    return -(-a // b)


__all__ = ["TModule", "TauPoly", "phi_of", "make_carlitz_power", "drinfeld_module",
           "constant_module", "SchemaError", "ValidationError", "poly_from_json",
           "poly_to_json", "ceil_div"]
