"""Exact computations for modified lambda-differential Lie-Yamaguti algebras."""
from .algebra import (LYAlgebra, MDLYAlgebra, ModifiedOperator, enumerate_modified_operators,
                      lya_from_leibniz, lya_from_lie, shift_to_derivation, verify_derivation, verify_lya,
                      verify_modified_operator)
from .cochains import CochainSpace, LYCochain, MDLYCochain, delta, matrix_of, partial, phi_map
from .cohomology import CohomologyReport, cohomologous, cohomology_dim, is_cocycle
from .deformation import (TruncatedDeformation, apply_equivalence, apply_equivalence_order1, extend_order,
                          infinitesimal_cocycle_check, rigidity_report, verify_deformation)
from .errors import AntisymmetryConflict, InputError, NotACocycle, UnsupportedDegree
from .extension import (AbelianExtension, ExtensionCocycle, build_extension, classify, cocycle_from_section,
                        eta_omega)
from .linalg import RatMatrix, kernel_basis, rank, solve
from .report import Report
from .representation import (Representation, adjoint_representation, semidirect_product,
                             shift_representation, verify_representation)

__all__ = [name for name in dir() if not name.startswith("_")]
