"""Finsler geometry of F = (y1 y2 y3 y4)^(1/4) on the up-sector.

Submodules: ``metric``, ``frames``, ``geodesics``, ``kinematics``,
``invariance``, ``numerics`` and ``verify``; ``cli`` is the ``bm`` tool.
"""

from .errors import (AdmissibilityError, BMError, ChartOverflowError, DomainError, RangeError,
                     SpacelikeSeparationError)
from .frames import (HADAMARD, ORTHONORMAL, ChartPoint, ConstantsMatrix, Tetrad, constants_matrix,
                     from_chart, induced_indicatrix_metric, tetrad, to_chart)
from .geodesics import (GeodesicIVP, GeodesicSolution, angle, distance, point_along, scalar_product,
                        solve_bvp, solve_ivp)
from .invariance import PowerTransform, RotationAngles, one_angle_exponents, rotation_exponents
from .kinematics import (boost, compose, dilatation_factor, kinematic_length, kinematic_matrix,
                         reciprocal, relative_velocity, subtract)
from .metric import covariant_vector, metric_function, metric_tensor
from .numerics import FDConfig, rk4_integrate

__version__ = "0.1.0"
