"""Exact arithmetic kernels: finite fields, polynomials, Laurent series, matrices."""

from .fields import GF
from .irreducible import (FactorResult, ResidueField, enumerate_irreducibles, factor_mod,
                          irreducible_rows, is_irreducible, necklace_count)
from .linalg import (SingularMatrixError, char_poly, char_poly_batch, companion, lm_det,
                     lm_solve, nullspace, pm_det, pm_mul, rank, row_reduce, sylvester_solve)
from .poly import Poly
from .series import INF, LaurentSeries, PrecisionError, series_from_rational
from .smith import SmithDecomposition, check_smith, smith_normal_form


def hasse_derivative(f, j):
    """D_j on a :class:`Poly` or :class:`LaurentSeries`."""
    if j < 0:
        raise ValueError("Hasse derivative order must be >= 0")
    return f.hasse(j)


__all__ = [
    "GF", "Poly", "LaurentSeries", "PrecisionError", "INF", "series_from_rational",
    "char_poly", "char_poly_batch", "companion", "row_reduce", "rank", "nullspace",
    "pm_mul", "pm_det", "lm_det", "lm_solve", "sylvester_solve", "SingularMatrixError",
    "smith_normal_form", "SmithDecomposition", "check_smith",
    "enumerate_irreducibles", "irreducible_rows", "is_irreducible", "necklace_count",
    "factor_mod", "FactorResult", "ResidueField", "hasse_derivative",
]
