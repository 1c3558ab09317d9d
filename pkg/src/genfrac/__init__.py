"""Generalized fractional operators over pluggable difference kernels.

Integral-type (K), Riemann-Liouville-type (A) and Caputo-type (B)
operators indexed by weighted two-sided parameter sets, their partial
variants on a rectangle, and numerically verified integration-by-parts
and Green-type identities with residual reports.
"""

from .funcspec import FuncSpec, ParseError, parse_expression
from .identities import (
    VerificationReport,
    convergence_study,
    reports_to_csv,
    verify_green,
    verify_green_rl_corollary,
    verify_ibp_2d,
)
from .ops1d import OperatorRequest, aop, bop, kop
from .ops2d import PartialRequest, partial_aop, partial_bop, partial_kop
from .pset import ParameterSet, dual, standard_left, standard_right
from .quadrature import (
    DEFAULT_RULE,
    NonFiniteSampleError,
    QuadratureRule,
    Rectangle,
    contour_integral,
    integrate_2d,
    integrate_singular,
)
from .specfun import (
    Kernel,
    KernelFamily,
    euler_oracle,
    gamma,
    kernel_family_from_label,
    rl_family,
    rl_kernel,
    tempered_family,
    tempered_kernel,
)

__version__ = "0.1.0"

__all__ = [
    "FuncSpec",
    "ParseError",
    "parse_expression",
    "VerificationReport",
    "convergence_study",
    "reports_to_csv",
    "verify_green",
    "verify_green_rl_corollary",
    "verify_ibp_2d",
    "OperatorRequest",
    "aop",
    "bop",
    "kop",
    "PartialRequest",
    "partial_aop",
    "partial_bop",
    "partial_kop",
    "ParameterSet",
    "dual",
    "standard_left",
    "standard_right",
    "DEFAULT_RULE",
    "NonFiniteSampleError",
    "QuadratureRule",
    "Rectangle",
    "contour_integral",
    "integrate_2d",
    "integrate_singular",
    "Kernel",
    "KernelFamily",
    "euler_oracle",
    "gamma",
    "kernel_family_from_label",
    "rl_family",
    "rl_kernel",
    "tempered_family",
    "tempered_kernel",
    "__version__",
]
