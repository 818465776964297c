"""Rumin's complex on Heisenberg groups: exact algebra and numerical homotopies."""

from .exterior import Covector, Form, hodge_star, lefschetz, wedge, weight_split
from .forms import (OperatorMatrix, codifferential_matrix, d_c_apply, d_c_matrix, dilation_pullback,
                    exterior_d, laplacian_matrix, leibniz_commutator, leibniz_structure, pi_E)
from .group import GroupParams, GroupPoint, dilate, gauge, gauge_distance, group_mul
from .operators import Operator
from .poly import PolyScalar
from .projections import LinearMap, SubspaceBasis, d0_map, d0_pinv, e0_basis, pi_E0

__version__ = "0.1.0"

__all__ = [
    "Covector", "Form", "GroupParams", "GroupPoint", "LinearMap", "Operator", "OperatorMatrix",
    "PolyScalar", "SubspaceBasis", "codifferential_matrix", "d0_map", "d0_pinv", "d_c_apply",
    "d_c_matrix", "dilate", "dilation_pullback", "e0_basis", "exterior_d", "gauge", "gauge_distance",
    "group_mul", "hodge_star", "laplacian_matrix", "lefschetz", "leibniz_commutator",
    "leibniz_structure", "pi_E", "pi_E0", "wedge", "weight_split",
]
