"""Ext groups of the shtuka attached to E on P^1, and the linearization identity."""

from .cech import CechH1
from .linearize import (PolyRing, TruncatedRing, berkowitz, check_linearization, laplace_det,
                        linearization_sides, linearize, ring_det)
from .pencil import (ExtResult, InadmissibleError, ShtukaPencil, ShtukaUnitError, admissible_d,
                     build_pencil, ext_groups, finite_module_from_theta, is_admissible,
                     realize_unit, units_via_shtuka)

__all__ = ["CechH1", "ShtukaPencil", "ExtResult", "admissible_d", "is_admissible",
           "build_pencil", "ext_groups", "units_via_shtuka", "realize_unit",
           "finite_module_from_theta", "InadmissibleError", "ShtukaUnitError",
           "linearize", "linearization_sides", "check_linearization", "berkowitz", "ring_det",
           "laplace_det", "TruncatedRing", "PolyRing"]
