"""Twistor lifts of quaternionic polynomials and the GL(2,H) action on them."""
__version__ = "0.1.0"

from .errors import (ConstantPolynomial, IsotropicPoint, MalformedInput,
                     NotAdmissibleForConstant, NotLowerTriangular, NotProjectivelyReal,
                     RealBasePoint, SingularElement, SingularMatrix, TwistorError,
                     UnclassifiablePoint, UnknownCommand, WitnessSearchExhausted,
                     ZeroMap, ZeroQuaternion)
from .quat_core import (EPS, GL2HElement, Quaternion, quat_inv, quat_mul,
                        rho_mat, rho_quat)
from .klein import (OrbitTag, OrbitType, classify_hyperplane, classify_point,
                    kappa, klein_B, klein_q, sigma, tau, wedge_action)
from .sliceregpoly import (SliceRegPoly, graph_matrix_at, lift_coefficients,
                           twistor_plucker_at)
from .planarity import (PlanarType, RLinearMap, annihilator_basis,
                        covector_and_pole, is_planar, planarity_report)
from .orbits import (NormalForm, act_gamma, is_admissible_for,
                     is_globally_admissible, normalize, orbit_equal,
                     transform_constant)

__all__ = [
    "ConstantPolynomial", "IsotropicPoint", "MalformedInput", "NotAdmissibleForConstant",
    "NotLowerTriangular", "NotProjectivelyReal", "RealBasePoint", "SingularElement",
    "SingularMatrix", "TwistorError", "UnclassifiablePoint", "UnknownCommand",
    "WitnessSearchExhausted", "ZeroMap", "ZeroQuaternion",
    "EPS", "GL2HElement", "Quaternion", "quat_inv", "quat_mul", "rho_mat", "rho_quat",
    "OrbitTag", "OrbitType", "classify_hyperplane", "classify_point", "kappa",
    "klein_B", "klein_q", "sigma", "tau", "wedge_action",
    "SliceRegPoly", "graph_matrix_at", "lift_coefficients", "twistor_plucker_at",
    "PlanarType", "RLinearMap", "annihilator_basis", "covector_and_pole",
    "is_planar", "planarity_report",
    "NormalForm", "act_gamma", "is_admissible_for", "is_globally_admissible",
    "normalize", "orbit_equal", "transform_constant",
]
