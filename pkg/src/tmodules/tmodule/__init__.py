"""Abelian t-modules, Euler factors and special L-values."""

from .euler import (EulerFactorReport, LValueResult, MonogenicPrime, NonMaximalError,
                    UncertifiedPrecisionError, brute_force_zeta, euler_factor, euler_product,
                    heuristic_bound, l_value, local_norm, reduce_mod_prime, residue_algebra,
                    zeta_monogenic, zeta_sum)
from .finite import FiniteKtModule
from .model import (SchemaError, TauPoly, TModule, ValidationError, constant_module,
                    drinfeld_module, make_carlitz_power, phi_of)

__all__ = [
    "TModule", "TauPoly", "phi_of", "make_carlitz_power", "drinfeld_module", "constant_module",
    "SchemaError", "ValidationError", "FiniteKtModule",
    "reduce_mod_prime", "residue_algebra", "euler_factor", "EulerFactorReport", "MonogenicPrime",
    "l_value", "LValueResult", "heuristic_bound", "euler_product", "zeta_sum",
    "brute_force_zeta", "zeta_monogenic", "local_norm", "NonMaximalError",
    "UncertifiedPrecisionError",
]
