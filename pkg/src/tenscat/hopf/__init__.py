"""Finite-dimensional Hopf algebras, their right modules and Drinfeld twists."""
from .algebra import FiniteDimAlgebra, HopfAlgebra, HopfStructureError, check_hopf_axioms
from .builders import (
    builtin_group_tables,
    builtin_hopf_algebras,
    cyclic_group_table,
    group_algebra,
    sweedler_algebra,
    taft_algebra,
)
from .modules import (
    HModule,
    IsomorphismUndetermined,
    ModuleError,
    ModuleHom,
    direct_sum_modules,
    hom_space,
    is_isomorphic,
    iso_search,
    left_dual_module,
    regular_module,
    right_dual_module,
    tensor_hom,
    tensor_module,
    trivial_module,
    zero_module,
    zigzag_left,
    zigzag_right,
)
from .twist import TwistElement, TwistError, drinfeld_twist, perturbed_identity_twist, validate_twist
