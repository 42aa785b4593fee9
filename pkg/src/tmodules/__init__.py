"""Special L-values, unit modules and class modules of abelian t-modules over F_q[t]."""

__version__ = "0.1.0"

from . import algebra, analytic, shtuka, tmodule  # noqa: E402

__all__ = ["algebra", "tmodule", "analytic", "shtuka", "__version__"]
