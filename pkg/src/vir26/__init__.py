"""
Exact computations for the Virasoro pair at central charges c and 26 - c:
singular vectors, Zhu polynomials and fusion rules, hypergeometric product
identities, correlators solving the BPZ equations, structure constants and
locality of the paired vertex operators.
"""

from .kappa_field import RatFunc, KAPPA, delta, delta_bar, central_charge, central_charge_bar
from .formal_series import TruncSeries, HypergeomParams, gauss_2f1
from .virasoro_verma import singular_vector, is_singular
from .zhu_fusion import f_poly, det_An, fusion_admissible, fusion_vanishing_check
from .hyp_identities import IdentityCase, identity_residual
from .correlators_bpz import CorrelatorSpec, BpzOperator, bpz_residual
from .voa_locality import structure_constant, locality_matrix_coeffs

__version__ = "0.1.0"
