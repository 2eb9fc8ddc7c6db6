"""Bounded complexes over abelian monoidal backends."""
from .backends import Backend, BackendError, HModuleBackend, IntegerBackend, NotRigidError, QuiverBackend
from .complex import (
    BoundedComplex,
    ChainMap,
    ComplexError,
    cohomology,
    cohomology_support,
    dual_complex,
    dual_zigzag,
    induced_map_on_cohomology,
    is_quasi_isomorphism,
    random_complex,
    right_dual_complex,
    shift,
    stalk,
    total_tensor,
    truncate_ge,
    truncate_le,
    unit_stalk,
)
