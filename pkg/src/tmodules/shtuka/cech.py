"""Cech model of H^1(P^1, O(m)) for m <= -2.

With the cover {P^1 - inf, P^1 - 0}, H^1(O(m)) is spanned by the monomials
z^(m+1), ..., z^(-1); a Laurent polynomial reduces to this span by dropping
its polynomial part and every term of valuation >= -m.
"""

from __future__ import annotations

import numpy as np

from ..algebra import LaurentSeries


class CechH1:
    def __init__(self, m, field=None):
        if m > -2:
            raise ValueError(f"H^1(O({m})) on P^1 vanishes; need m <= -2")
        self.m = m
        self.field = field
        self.dim = -m - 1

    @property
    def labels(self):
        return [f"z^{k}" for k in range(-1, self.m, -1)]

    def reduce(self, a: LaurentSeries):
        """Coordinates (z^-1 first) of the class of a."""
        return np.asarray(a.coeffs_between(1, -self.m), dtype=np.int64)

    def reduce_vector(self, v):
        return np.concatenate([self.reduce(a) for a in v])

    def lift(self, coords, n=1, var="z"):
        """Representatives sum_k c_k z^-k as a vector of n Laurent polynomials."""
        coords = np.asarray(coords, dtype=np.int64).reshape(n, self.dim)
        return [LaurentSeries(self.field, 1, row, var=var) for row in coords]

    def __repr__(self):
        return f"CechH1(m={self.m}, dim={self.dim})"
