"""Solvability certificates for prescribed scalar curvature on the 3-sphere.

The pipeline: represent the candidate curvature as an ambient polynomial
with optional perturbations, locate and classify its critical points, attach
the local invariants a0/a1/a2, assemble the degree count d(t) over the
homotopy parameter t, and trace blow-up curves at the breakpoints.
"""

from .backend import BACKEND
from .critical import CriticalRecord, classify_table, find_critical_points
from .degree import DegreeReport, degree_at, degree_profile, nondegenerate_degree
from .errors import (AntipodeError, BreakpointError, CurvdegError,
                     DegenerateFunctionError, DomainError, InconclusiveError,
                     NoContractionError, NonIntegrableError,
                     NotNondegenerateError, SingularHessianError)
from .func_algebra import (AmbientPoly, BumpFunction, CurvatureSpec, TaylorJet4,
                           jet_quantities, pullback_jet)
from .invariants import (LocalInvariants, SpecAnalysis, analyze, compute_a0,
                         compute_a1, compute_a2, compute_T, crit_minus)
from .problems import (Problem, bundled_names, load_bundled, load_problem,
                       save_problem)
from .pv_quadrature import (AngularRule, PVResult, bump_weight_integral,
                            hessian_boundary_integral, jet_boundary_average,
                            pv_weighted_integral)
from .reduction import (AlphaTerms, BlowUpCurve, Bubble, alpha_terms,
                        beta_curve, blowup_curves, bubble_eval, gamma,
                        gamma_derivatives, spectrum)
from .sphere_geom import ChartFrame, SpherePoint, make_frame

__version__ = "0.1.0"

__all__ = [
    "AmbientPoly", "AngularRule", "AlphaTerms", "AntipodeError", "BACKEND",
    "BlowUpCurve", "BreakpointError", "Bubble", "BumpFunction", "ChartFrame",
    "CriticalRecord", "CurvatureSpec", "CurvdegError", "DegenerateFunctionError",
    "DegreeReport", "DomainError", "InconclusiveError", "LocalInvariants",
    "NoContractionError", "NonIntegrableError", "NotNondegenerateError",
    "Problem", "PVResult", "SingularHessianError", "SpecAnalysis", "SpherePoint",
    "TaylorJet4", "alpha_terms", "analyze", "beta_curve", "blowup_curves",
    "bubble_eval", "bump_weight_integral", "classify_table", "compute_T",
    "bundled_names", "compute_a0", "compute_a1", "compute_a2", "crit_minus", "degree_at",
    "degree_profile", "find_critical_points", "gamma", "gamma_derivatives",
    "hessian_boundary_integral", "jet_boundary_average", "jet_quantities",
    "load_bundled", "load_problem", "make_frame", "nondegenerate_degree",
    "pullback_jet", "pv_weighted_integral", "save_problem", "spectrum",
]
