"""Finite k[t]-modules presented by the matrix of t."""

from __future__ import annotations

import numpy as np

from ..algebra import GF, Poly, char_poly
from ..algebra.smith import smith_normal_form


class FiniteKtModule:
    """A finite k[t]-module: F_q-dimension D and the D x D matrix T of t."""

    def __init__(self, field: GF, T, labels=None):
        T = np.asarray(T, dtype=np.int64)
        if T.ndim != 2 or T.shape[0] != T.shape[1]:
            raise ValueError("t-action must be a square matrix")
        self.field = field
        self.T = T
        self.dim = T.shape[0]
        self.labels = labels

    @classmethod
    def zero(cls, field):
        return cls(field, np.zeros((0, 0), dtype=np.int64))

    def order(self) -> Poly:
        """|M| = det(t - T)."""
        if self.dim == 0:
            return Poly.one(self.field)
        return char_poly(self.field, self.T)

    def invariant_factors(self):
        """Nontrivial invariant factors of t I - T (the k[t]-module structure)."""
        if self.dim == 0:
            return []
        F = self.field
        t = Poly.x(F)
        M = [[(t if i == j else Poly.zero(F)) - Poly.const(F, int(self.T[i, j]))
              for j in range(self.dim)] for i in range(self.dim)]
        return smith_normal_form(M).nontrivial_factors()

    def __repr__(self):
        return f"FiniteKtModule(dim={self.dim}, |M|={self.order()})"
