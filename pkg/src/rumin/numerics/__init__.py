"""Quadrature-based homotopies, Poincaré ratios and related numerical checks."""

from .annulus import annulus_admissibility, annulus_constants, construct_pair
from .byparts import CutoffForm, adjoint_residual, byparts_residual, koranyi_bump
from .forms import CallableForm
from .homotopy import (RuminHomotopy, chapeau_ratios, euclidean_homotopy_residual, homotopy_residual,
                       keuc_apply, rumin_homotopy_apply)
from .poincare import admissible_exponents, poincare_ratio_estimate
from .quadrature import Domain, QuadratureSpec
from .sublaplacian import sublaplacian_fundamental_residual

__all__ = [
    "CallableForm", "CutoffForm", "Domain", "QuadratureSpec", "RuminHomotopy",
    "adjoint_residual", "admissible_exponents", "annulus_admissibility", "annulus_constants",
    "byparts_residual", "chapeau_ratios", "construct_pair", "euclidean_homotopy_residual",
    "homotopy_residual", "keuc_apply", "koranyi_bump", "poincare_ratio_estimate",
    "rumin_homotopy_apply", "sublaplacian_fundamental_residual",
]
