"""Exact-arithmetic Yoshida lifts for definite quaternion orders."""

from .quatcore import (ClassSet, Lattice, QuatElement, QuaternionAlgebra,
                       UsageError, class_set, conj_trace_norm, gram_matrix,
                       ideal_equivalent, left_right_order, multiply,
                       short_vectors, two_sided_ideal)
from .harmonic import (HarmonicPoly, HarmSpace, TraceZeroFrame, default_frame,
                       harm_basis, lift_poly_deg1, lift_poly_deg2, pairing,
                       tau_action)
from .brandt import (AutomorphicForm, BrandtMatrix, FormSpace, atkin_lehner,
                     brandt_matrix, eigenforms, essential_part, inner_product)
from .binforms import reduce_form
from .yoshida import (FourierExpansionSiegel2, QExpansion, phi_operator,
                      theta2_coefficient, yoshida1, yoshida2)
from .siegelhecke import (LocalFactor, PoleError, SatakePair, eigenvalue_extract,
                          hecke_Tp, hecke_cosets, lambda_N, rankin_selberg_local,
                          standard_L_local)

__version__ = "0.1.0"
