"""Independent reference computations used to check the solver."""
from .exact import ExactSolutionError, ExactSolutionSpec, Family, ZPoly, apply_L, exact_solution
from .fd import CartesianField, SingularSystemError, fd_solve
from .holder import holder_boundary
from .identities import IDENTITIES, IdentityCheck, random_interior_points, run_identity_suite
from .opnorm import NormEstimate, equality_family, norm_ratio, opnorm_estimate, power_iteration
from .quadrature import bruteforce_kernel

__all__ = [
    "CartesianField", "ExactSolutionError", "ExactSolutionSpec", "Family", "IDENTITIES", "IdentityCheck",
    "NormEstimate", "SingularSystemError", "ZPoly", "apply_L", "bruteforce_kernel", "equality_family",
    "exact_solution", "fd_solve", "holder_boundary", "norm_ratio", "opnorm_estimate", "power_iteration",
    "random_interior_points", "run_identity_suite",
]
