"""Evaluation and identity checks for G_n(x) = sum (|l|!/l!)^2 x^l, the
Lauricella F_C function with all parameters equal to one."""

from .bases import closed_form_base, default_base, recursion_base, series_base
from .closedforms import (EllipticReduction, a_coefficients, elliptic_reduction, g1, g2, g3,
                          g3_f4_expansion, g3_via_elliptic_integral, gn_closed,
                          hypergeo_ode_residual, legendre_generating_check, psi, riccati_residual)
from .contour import (BaseEvaluator, ContourSpec, QuadratureResult, contour_integral,
                      gn_via_multicontour, gn_via_recursion, kernel_via_contour, s_map,
                      s_map_multi)
from .errors import (BranchCutError, BranchError, BranchPathError, ConvergenceError, DomainError,
                     EvaluationError, GnError, NonConvergence, ParameterError, PoleError,
                     SingularQ, UnsupportedDimension, ZeroCoordinate, ZeroX3)
from .gauss2f1 import (Hyp2F1Params, hyp2f1, kernel_K, kernel_series, pfaff_quadratic_check,
                       pk_coefficients)
from .multiseries import (CPoint, Evaluation, MultiIndex, TruncationSpec, eval_f1_series,
                          eval_f2_series, eval_f4_series, eval_fc_series, eval_gn_series,
                          gn_coefficient, in_omega_n)
from .symmetry import (Involution, Permutation, RationalPoint, TransformWord, hn, qn,
                       t_involution, tracked_gn, u_invariant, verify_q_covariance,
                       verify_quasi_invariance, verify_u_invariance)

__version__ = "0.1.0"
