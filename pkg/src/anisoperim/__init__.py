"""Anisotropic relative isoperimetric constants for planar convex domains.

Compute Wulff shapes, anisotropic perimeters, and the optimal constant
C_H(Omega) of P_H^2(E; Omega) >= C_H min(|E|, |Omega \\ E|), together
with the minimizing cuts and their contact-angle residuals.
"""

__version__ = "0.1.0"

from .errors import (AnisoError, CornerError, GeometryError, InfeasibleError,
                     InputError, NumericError, PreconditionError,
                     SingularityError, SpecError, UnsupportedNormError,
                     ValidationFailure)
from .norms import AnisotropicNorm, PolarNorm, duality_identities, validate
from .wulff import (WulffArc, WulffShape, anisotropic_curvature,
                    fit_wulff_arc_through, kappa, make_wulff_arc, wulff_area)
from .geometry import (ConvexDomain, Cut, Frame, ParametricDomain,
                       PolygonDomain, RadialDomain, boundary_frame, chord_cut,
                       disk_domain, domain_area, ellipse_domain,
                       is_centrosymmetric, norm_level_domain, polyline_cut,
                       ray_boundary_intersection, split, wulff_arc_cut)
from .perimeter import (PerimeterReport, curve_length_H, quotient,
                        relative_perimeter, segment_minimality_check)
from .solver import (IsoResult, MinimizerInfo, Tolerances,
                     VerificationSummary, area_profile, constant_symmetric,
                     contact_residual, r_h, solve_auto, solve_general,
                     solve_p_limit, verify_lower_bound)
from .curves import Curve, FunctionCurve, Polyline, Segment

__all__ = [name for name in dir() if not name.startswith("_")]
