"""Exact linear algebra: fields, dense matrices, integer normal forms."""
from .fields import (
    GF,
    QQ,
    Cyclotomic,
    CycloElement,
    CyclotomicField,
    Field,
    FieldMismatchError,
    PrimeField,
    Rationals,
    cyclotomic_polynomial,
    cyclotomic_primitive_root,
    field_from_spec,
    field_from_tag,
    primitive_root_of_unity,
)
from .intmat import IntMatrix, smith_normal_form
from .matrix import (
    ExactMatrix,
    column_basis,
    complement_basis,
    kernel_basis,
    kernel_matrix,
    kronecker,
    linear_combination,
    rank,
    rref,
    solve,
    solve_matrix,
)
