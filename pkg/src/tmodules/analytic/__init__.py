"""Exponential, twisted structure, lattices, unit and class modules."""

from .expseries import (BallConstants, ExpSeries, InsufficientCoefficientsError, LogSeries,
                        ball_constants, compose_exp_log, exp_ball_inverse, exp_coeffs,
                        exp_eps, exp_eval_small, functional_equation_residual, log_coeffs)
from .twisted import (Lattice, TwistedCoordinatesError, TwistedSpace, compose_diff_ops,
                      coord_degree, lattice_index, reduce_basis)
from .units import (ClassModule, HeadBoundError, StabilizationError, UnitModule, class_module,
                    exp_eval, exp_integrality_defect, log_eval, regulator, unit_module)

__all__ = ["ExpSeries", "LogSeries", "BallConstants", "exp_coeffs", "log_coeffs",
           "ball_constants", "exp_eval_small", "exp_ball_inverse", "exp_eps",
           "compose_exp_log", "InsufficientCoefficientsError", "functional_equation_residual",
           "TwistedSpace", "Lattice", "lattice_index", "reduce_basis", "compose_diff_ops",
           "coord_degree", "TwistedCoordinatesError",
           "exp_eval", "log_eval", "unit_module", "class_module", "regulator", "UnitModule",
           "ClassModule", "StabilizationError", "HeadBoundError", "exp_integrality_defect"]
